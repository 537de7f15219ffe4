#pragma once

// Overpartition numbers pbar(n), exactly or modulo a prime, and the on-disk
// residue cache.
//
// Production route: F = 1/f = eta(z)^2/eta(2z) = 1 + 2 sum_{j>=1} (-1)^j q^(j^2),
// so f * F = 1 gives
//     pbar(n) = 2 sum_{j>=1} (-1)^(j+1) pbar(n - j^2),
// a single triangular solve against a series with O(sqrt T) support.
// The two-stage pentagonal solve (g P = P(q^2), then f P = g) is kept as a
// second, independent route.

#include "overpart/eta.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace overpart {

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CacheFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default cap on the number of overpartition terms a single build may request.
inline constexpr std::uint64_t kDefaultIndexCap = 100'000'000;

namespace detail {

inline void check_cap(std::uint64_t terms, std::uint64_t cap)
{
    if (cap != 0 && terms > cap) {
        throw ResourceLimitError("overpartition build of " + std::to_string(terms) +
                                 " terms exceeds the index cap of " + std::to_string(cap));
    }
}

}  // namespace detail

/// pbar(0..count-1) mod m for an odd modulus m < 256, as bytes.
///
/// Blocked evaluation of the theta recurrence: within a block [n0, n0+B),
/// every j with j^2 >= B only reads finished entries, so those terms are
/// accumulated as contiguous, vectorizable slices; the few j with j^2 < B are
/// handled sequentially per index.
inline std::vector<std::uint8_t> overpartition_residues(std::uint64_t count, std::uint32_t m,
                                                        std::uint64_t cap = kDefaultIndexCap)
{
    if (m < 3 || m > 255 || m % 2 == 0) {
        throw std::invalid_argument("overpartition_residues: modulus must be odd and below 256");
    }
    detail::check_cap(count, cap);
    std::vector<std::uint8_t> p(count);
    if (count == 0) {
        return p;
    }
    p[0] = 1;

    constexpr std::uint64_t kBlock = 2048;
    std::uint64_t near = 1;
    while ((near + 1) * (near + 1) < kBlock) {
        ++near;
    }
    // j <= near  <=>  j^2 < kBlock
    std::array<std::uint32_t, kBlock> odd_acc{};
    std::array<std::uint32_t, kBlock> even_acc{};

    for (std::uint64_t n0 = 1; n0 < count; n0 += kBlock) {
        const std::uint64_t len = std::min<std::uint64_t>(kBlock, count - n0);
        odd_acc.fill(0);
        even_acc.fill(0);
        for (std::uint64_t j = near + 1; j * j <= n0 + len - 1; ++j) {
            const std::uint64_t sq = j * j;
            const std::uint64_t lo = sq > n0 ? sq - n0 : 0;
            const std::uint8_t* src = p.data() + (n0 + lo - sq);
            std::uint32_t* dst = ((j & 1U) ? odd_acc.data() : even_acc.data()) + lo;
            const std::uint64_t n = len - lo;
            for (std::uint64_t i = 0; i < n; ++i) {
                dst[i] += src[i];
            }
        }
        for (std::uint64_t i = 0; i < len; ++i) {
            const std::uint64_t n = n0 + i;
            std::uint64_t pos = odd_acc[i];
            std::uint64_t neg = even_acc[i];
            for (std::uint64_t j = 1; j <= near && j * j <= n; ++j) {
                if (j & 1U) {
                    pos += p[n - j * j];
                } else {
                    neg += p[n - j * j];
                }
            }
            const std::uint64_t diff = (pos % m) + m - (neg % m);
            p[n] = static_cast<std::uint8_t>((2 * diff) % m);
        }
    }
    return p;
}

/// pbar(0..Nmax-1) over any coefficient ring, by the theta recurrence.
template <class Ring>
    requires std::is_class_v<Ring>
Series<Ring> overpartition_series(std::size_t Nmax, const Ring& ring, std::uint64_t cap = kDefaultIndexCap)
{
    if (Nmax == 0) {
        throw std::invalid_argument("overpartition_series: Nmax must be positive");
    }
    detail::check_cap(Nmax, cap);
    if constexpr (std::is_same_v<Ring, ModRing>) {
        const std::uint64_t m = ring.modulus();
        if (m % 2 == 1 && m < 256) {
            const auto bytes = overpartition_residues(Nmax, static_cast<std::uint32_t>(m), cap);
            Series<Ring> out(ring, Nmax);
            for (std::size_t n = 0; n < Nmax; ++n) {
                out[n] = bytes[n];
            }
            return out;
        }
    }
    Series<Ring> p(ring, Nmax);
    p[0] = ring.one();
    for (std::size_t n = 1; n < Nmax; ++n) {
        auto acc = ring.zero();
        for (std::size_t j = 1; j * j <= n; ++j) {
            acc = (j & 1U) ? ring.add(acc, p[n - j * j]) : ring.sub(acc, p[n - j * j]);
        }
        p[n] = ring.add(acc, acc);
    }
    return p;
}

/// Exact pbar(0..Nmax-1).
inline Series<IntegerRing> overpartition_series(std::size_t Nmax)
{
    return overpartition_series(Nmax, IntegerRing{});
}

/// pbar(0..Nmax-1) mod m.
inline Series<ModRing> overpartition_series(std::size_t Nmax, std::uint64_t m, std::uint64_t cap = kDefaultIndexCap)
{
    return overpartition_series(Nmax, ModRing(m), cap);
}

/// The same series by two triangular solves against the pentagonal series P:
/// g P = P(q^2), then f P = g.
template <class Ring>
Series<Ring> overpartition_series_pentagonal(std::size_t Nmax, const Ring& ring)
{
    const auto P = euler_product_series(1, Nmax, ring);
    const auto P2 = euler_product_series(2, Nmax, ring);
    const auto g = divide(P2, P);
    return divide(g, P);
}

// ---------------------------------------------------------------------------
// Residue cache file: "OPC1", u64 LE m, u64 LE Nmax, then Nmax residue bytes.

struct ResidueTable {
    std::uint32_t m = 0;
    std::vector<std::uint8_t> residues;

    [[nodiscard]] std::uint64_t size() const { return residues.size(); }
};

inline constexpr std::array<char, 4> kCacheMagic{'O', 'P', 'C', '1'};

namespace detail {

inline void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

inline std::uint64_t get_u64_le(const std::uint8_t* p)
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | p[i];
    }
    return v;
}

}  // namespace detail

inline std::vector<std::uint8_t> encode_cache(const ResidueTable& table)
{
    std::vector<std::uint8_t> out(kCacheMagic.begin(), kCacheMagic.end());
    out.reserve(20 + table.residues.size());
    detail::put_u64_le(out, table.m);
    detail::put_u64_le(out, table.residues.size());
    out.insert(out.end(), table.residues.begin(), table.residues.end());
    return out;
}

inline ResidueTable decode_cache(const std::vector<std::uint8_t>& bytes)
{
    if (bytes.size() < 20 || !std::equal(kCacheMagic.begin(), kCacheMagic.end(), bytes.begin())) {
        throw CacheFormatError("residue cache: bad magic");
    }
    const std::uint64_t m = detail::get_u64_le(bytes.data() + 4);
    const std::uint64_t n = detail::get_u64_le(bytes.data() + 12);
    if (m < 2 || m > 255) {
        throw CacheFormatError("residue cache: modulus out of range");
    }
    if (bytes.size() - 20 != n) {
        throw CacheFormatError("residue cache: length mismatch");
    }
    ResidueTable table{static_cast<std::uint32_t>(m), std::vector<std::uint8_t>(bytes.begin() + 20, bytes.end())};
    for (std::uint64_t i = 0; i < n; ++i) {
        if (table.residues[i] >= m) {
            throw CacheFormatError("residue cache: residue out of range at index " + std::to_string(i));
        }
    }
    return table;
}

inline void write_cache_file(const std::filesystem::path& path, const ResidueTable& table)
{
    const auto bytes = encode_cache(table);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw std::runtime_error("cannot write residue cache " + tmp);
        }
        os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
    std::filesystem::rename(tmp, path);
}

inline ResidueTable read_cache_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot read residue cache " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return decode_cache(bytes);
}

/// Hex SHA-256 of a byte buffer.
inline std::string sha256_hex(const std::vector<std::uint8_t>& bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4U];
        out += kHex[digest[i] & 0xFU];
    }
    return out;
}

/// Hash of the table's cache-file encoding.
inline std::string content_hash(const ResidueTable& table)
{
    return sha256_hex(encode_cache(table));
}

/// Hands out residue tables per modulus, building each at most once and
/// persisting it under `cache_dir` when one is configured.
class ResidueStore {
public:
    explicit ResidueStore(std::optional<std::filesystem::path> cache_dir = std::nullopt,
                          std::uint64_t index_cap = kDefaultIndexCap)
        : cache_dir_(std::move(cache_dir)), index_cap_(index_cap)
    {
    }

    [[nodiscard]] std::uint64_t index_cap() const { return index_cap_; }
    [[nodiscard]] const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

    [[nodiscard]] bool within_cap(std::uint64_t terms) const { return index_cap_ == 0 || terms <= index_cap_; }

    /// A table for modulus m holding at least `terms` residues.
    std::shared_ptr<const ResidueTable> residues(std::uint32_t m, std::uint64_t terms)
    {
        std::lock_guard lock(mutex_);
        for (const auto& t : tables_) {
            if (t->m == m && t->size() >= terms) {
                return t;
            }
        }
        detail::check_cap(terms, index_cap_);
        if (auto loaded = load_from_disk(m, terms)) {
            tables_.push_back(loaded);
            return loaded;
        }
        auto table = std::make_shared<ResidueTable>();
        table->m = m;
        table->residues = overpartition_residues(terms, m, index_cap_);
        if (cache_dir_) {
            std::filesystem::create_directories(*cache_dir_);
            write_cache_file(*cache_dir_ / file_name(m, terms), *table);
        }
        tables_.push_back(table);
        return table;
    }

    static std::string file_name(std::uint32_t m, std::uint64_t terms)
    {
        return "opc-m" + std::to_string(m) + "-n" + std::to_string(terms) + ".bin";
    }

private:
    std::shared_ptr<const ResidueTable> load_from_disk(std::uint32_t m, std::uint64_t terms) const
    {
        if (!cache_dir_ || !std::filesystem::is_directory(*cache_dir_)) {
            return nullptr;
        }
        const std::regex pattern("opc-m" + std::to_string(m) + "-n([0-9]+)\\.bin");
        std::optional<std::pair<std::uint64_t, std::filesystem::path>> best;
        for (const auto& entry : std::filesystem::directory_iterator(*cache_dir_)) {
            std::smatch match;
            const std::string name = entry.path().filename().string();
            if (std::regex_match(name, match, pattern)) {
                const std::uint64_t n = std::stoull(match[1].str());
                if (n >= terms && (!best || n < best->first)) {
                    best = std::make_pair(n, entry.path());
                }
            }
        }
        if (!best) {
            return nullptr;
        }
        auto table = std::make_shared<ResidueTable>(read_cache_file(best->second));
        if (table->m != m || table->size() < terms) {
            throw CacheFormatError("residue cache " + best->second.string() + " does not match its file name");
        }
        return table;
    }

    std::optional<std::filesystem::path> cache_dir_;
    std::uint64_t index_cap_;
    std::mutex mutex_;
    std::vector<std::shared_ptr<const ResidueTable>> tables_;
};

}  // namespace overpart
