#include "invop/cache.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>

#include "invop/bench.hpp"

namespace invop {

namespace {

constexpr char kMagic[4] = {'I', 'V', 'O', 'P'};
constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 4 + 4;

template <typename T>
void put_le(std::string& out, T value) {
    using U = std::make_unsigned_t<T>;
    auto bits = static_cast<U>(value);
    for (std::size_t k = 0; k < sizeof(T); ++k) {
        out.push_back(static_cast<char>(bits & 0xFFu));
        bits = static_cast<U>(bits >> 8);
    }
}

template <typename U>
U get_le(std::string_view bytes, std::size_t offset) {
    U value = 0;
    for (std::size_t k = sizeof(U); k-- > 0;) {
        value = static_cast<U>((value << 8) | static_cast<unsigned char>(bytes[offset + k]));
    }
    return value;
}

std::string header(MatrixKind kind, std::size_t n) {
    if (n > UINT32_MAX) throw CacheError("matrix dimension does not fit the cache header");
    std::string out(kMagic, sizeof kMagic);
    out.push_back(static_cast<char>(kCacheFormatVersion));
    out.push_back(static_cast<char>(kind));
    put_le(out, static_cast<std::uint32_t>(n));
    put_le(out, static_cast<std::uint32_t>(n));
    return out;
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError("cannot open matrix file " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::string encode_matrix(const DenseMatrix& m) {
    std::string out = header(MatrixKind::dense, m.size());
    out.reserve(kHeaderSize + m.entries().size() * 8);
    for (const double v : m.entries()) put_le(out, std::bit_cast<std::uint64_t>(v));
    return out;
}

std::string encode_matrix(const QuantizedMatrix& q) {
    std::string out = header(MatrixKind::quantized, q.size());
    out.reserve(kHeaderSize + 1 + q.mantissas().size() * 8);
    out.push_back(static_cast<char>(static_cast<std::int8_t>(q.digits())));
    for (const std::int64_t v : q.mantissas()) put_le(out, v);
    return out;
}

MatrixPayload decode_matrix(std::string_view bytes, const std::string& origin) {
    if (bytes.size() < kHeaderSize) throw CacheError(origin + ": truncated header");
    if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw CacheError(origin + ": bad magic, not a matrix file");
    }
    const auto version = static_cast<std::uint8_t>(bytes[4]);
    if (version != kCacheFormatVersion) {
        throw CacheError(fmt::format("{}: format version {} unsupported (expected {})", origin,
                                     version, kCacheFormatVersion));
    }
    const auto kind = static_cast<std::uint8_t>(bytes[5]);
    const auto rows = get_le<std::uint32_t>(bytes, 6);
    const auto cols = get_le<std::uint32_t>(bytes, 10);
    if (rows != cols) {
        throw CacheError(fmt::format("{}: non-square matrix {}x{}", origin, rows, cols));
    }
    if (rows > kMaxDenseDimension) {
        throw CacheError(fmt::format("{}: dimension {} exceeds limit", origin, rows));
    }
    const std::size_t n = rows;
    const std::size_t count = n * n;

    if (kind == static_cast<std::uint8_t>(MatrixKind::dense)) {
        if (bytes.size() != kHeaderSize + count * 8) {
            throw CacheError(fmt::format("{}: expected {} payload bytes, found {}", origin,
                                         count * 8, bytes.size() - kHeaderSize));
        }
        std::vector<double> entries(count);
        for (std::size_t k = 0; k < count; ++k) {
            entries[k] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, kHeaderSize + 8 * k));
        }
        return DenseMatrix(n, std::move(entries));
    }
    if (kind == static_cast<std::uint8_t>(MatrixKind::quantized)) {
        if (bytes.size() != kHeaderSize + 1 + count * 8) {
            throw CacheError(fmt::format("{}: expected {} payload bytes, found {}", origin,
                                         1 + count * 8, bytes.size() - kHeaderSize));
        }
        const auto digits = static_cast<std::int8_t>(bytes[kHeaderSize]);
        if (digits < 0 || digits > kMaxDigits) {
            throw CacheError(fmt::format("{}: invalid scale digits {}", origin, digits));
        }
        std::vector<std::int64_t> mantissas(count);
        for (std::size_t k = 0; k < count; ++k) {
            mantissas[k] = static_cast<std::int64_t>(
                get_le<std::uint64_t>(bytes, kHeaderSize + 1 + 8 * k));
        }
        return QuantizedMatrix(n, digits, std::move(mantissas));
    }
    throw CacheError(fmt::format("{}: unknown matrix kind {}", origin, kind));
}

void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& m) {
    write_file(path, encode_matrix(m));
}

void write_matrix_file(const std::filesystem::path& path, const QuantizedMatrix& q) {
    write_file(path, encode_matrix(q));
}

MatrixPayload read_matrix_file(const std::filesystem::path& path) {
    return decode_matrix(read_all(path), path.string());
}

DenseMatrix read_dense_file(const std::filesystem::path& path) {
    auto payload = read_matrix_file(path);
    if (auto* dense = std::get_if<DenseMatrix>(&payload)) return std::move(*dense);
    throw CacheError(path.string() + ": expected a dense matrix, found a quantized one");
}

QuantizedMatrix read_quantized_file(const std::filesystem::path& path) {
    auto payload = read_matrix_file(path);
    if (auto* q = std::get_if<QuantizedMatrix>(&payload)) return std::move(*q);
    throw CacheError(path.string() + ": expected a quantized matrix, found a dense one");
}

std::string format_vector(std::span<const double> values) {
    std::string out;
    for (const double v : values) out += fmt::format("{}\n", v);
    return out;
}

void write_vector_file(const std::filesystem::path& path, std::span<const double> values) {
    write_file(path, format_vector(values));
}

std::vector<double> read_vector_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file " + path.string());
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end) {
            throw std::runtime_error(fmt::format("{}:{}: not a number: '{}'", path.string(),
                                                 line_no, std::string(begin, end)));
        }
        values.push_back(v);
    }
    return values;
}

std::string CacheKey::filename() const {
    return digits ? fmt::format("{}_{}x{}_m{}.ivop", scheme, nx, ny, *digits)
                  : fmt::format("{}_{}x{}_inverse.ivop", scheme, nx, ny);
}

MatrixCache::MatrixCache(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec || !std::filesystem::is_directory(directory_)) {
        throw CacheError("cannot create cache directory " + directory_.string());
    }
}

std::filesystem::path MatrixCache::path_for(const CacheKey& key) const {
    return directory_ / key.filename();
}

DenseMatrix MatrixCache::inverse(const Grid2D& grid) {
    const auto path = path_for({grid.nx(), grid.ny(), "uniform", std::nullopt});
    if (std::filesystem::exists(path)) {
        auto m = read_dense_file(path);
        if (m.size() != grid.size()) {
            throw CacheError(path.string() + ": dimension does not match the grid");
        }
        return m;
    }
    ++misses_;
    auto m = compute_inverse(grid);
    write_matrix_file(path, m);
    return m;
}

QuantizedMatrix MatrixCache::quantized(const Grid2D& grid, int digits) {
    const auto path = path_for({grid.nx(), grid.ny(), "uniform", digits});
    if (std::filesystem::exists(path)) {
        auto q = read_quantized_file(path);
        if (q.size() != grid.size() || q.digits() != digits) {
            throw CacheError(path.string() + ": content does not match its key");
        }
        return q;
    }
    auto q = quantize(inverse(grid), digits);
    ++misses_;
    write_matrix_file(path, q);
    return q;
}

}  // namespace invop
