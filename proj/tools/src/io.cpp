#include "brownspec_cli/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "brownspec/errors.hpp"

namespace brownspec::cli {

namespace {

constexpr char kMagic[8] = {'B', 'S', 'T', 'R', 'A', 'J', '\0', '\0'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 8 + 4 + 4 + 8 + 8;

template <class T>
void put_le(std::string& out, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    const U u = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFFu));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    if (pos + sizeof(U) > in.size()) throw Error("trajectory file truncated");
    U u = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        u |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(U);
    return std::bit_cast<T>(u);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) throw Error("format_double failed");
    return std::string(buf.data(), ptr);
}

std::string csv_text(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
    out += '\n';
    const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
    for (const auto& c : table.columns) {
        if (c.size() != rows) throw Error("csv columns differ in length");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(table.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const CsvTable& table) { write_text(path, csv_text(table)); }

CsvTable parse_csv(const std::string& text, const std::string& source) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(source + ": empty CSV");
    t.header = split(line, ',');
    t.columns.resize(t.header.size());
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line, ',');
        if (cells.size() != t.header.size()) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(t.header.size()) + " fields");
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            const auto& s = cells[c];
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size()) {
                throw ConfigError(source + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
            }
            t.columns[c].push_back(v);
        }
    }
    return t;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path), path); }

std::string trajectory_bytes(const Ensemble& ens, std::size_t local_index) {
    const auto& tr = ens.trajectories.at(local_index);
    const std::size_t n = static_cast<std::size_t>(ens.dims) * ens.n_steps;
    std::string out;
    out.reserve(kHeaderBytes + 16 * n);
    out.append(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(out, kTrajectoryVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ens.dims));
    put_le<double>(out, ens.dt);
    put_le<std::uint64_t>(out, ens.n_steps);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ens.medium.kind()));
    put_le<std::uint32_t>(out, 0u);
    put_le<std::uint64_t>(out, ens.first_index + local_index);
    put_le<std::uint64_t>(out, ens.seed);
    for (std::size_t i = 0; i < n; ++i) put_le<double>(out, tr.velocity[i]);
    for (std::size_t i = 0; i < n; ++i) put_le<double>(out, tr.position[i]);
    return out;
}

void write_trajectory(const std::string& path, const Ensemble& ens, std::size_t local_index) {
    write_text(path, trajectory_bytes(ens, local_index));
}

TrajectoryFile read_trajectory(const std::string& path) {
    const std::string in = read_text(path);
    if (in.size() < kHeaderBytes || std::memcmp(in.data(), kMagic, sizeof(kMagic)) != 0) {
        throw Error(path + ": not a brownspec trajectory file");
    }
    std::size_t pos = sizeof(kMagic);
    TrajectoryFile f;
    f.version = get_le<std::uint32_t>(in, pos);
    if (f.version != kTrajectoryVersion) throw Error(path + ": unsupported trajectory version");
    f.dims = get_le<std::uint32_t>(in, pos);
    f.dt = get_le<double>(in, pos);
    f.n_steps = get_le<std::uint64_t>(in, pos);
    f.medium_tag = get_le<std::uint32_t>(in, pos);
    (void)get_le<std::uint32_t>(in, pos);
    f.index = get_le<std::uint64_t>(in, pos);
    f.seed = get_le<std::uint64_t>(in, pos);
    const std::size_t n = static_cast<std::size_t>(f.dims) * f.n_steps;
    if (in.size() != kHeaderBytes + 16 * n) throw Error(path + ": size does not match header");
    f.velocity.resize(n);
    f.position.resize(n);
    for (auto& v : f.velocity) v = get_le<double>(in, pos);
    for (auto& x : f.position) x = get_le<double>(in, pos);
    return f;
}

std::string sha256_hex(const std::string& bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text(path)); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace brownspec::cli
