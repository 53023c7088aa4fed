#pragma once

// On-disk matrix files and the inverse cache.
//
// Layout (little-endian):
//   "IVOP" | version u8 = 1 | kind u8 (0 dense, 1 quantized) | rows u32 | cols u32
//   dense:     rows*cols IEEE-754 binary64, row-major
//   quantized: scale digits i8, then rows*cols int64 mantissas, row-major

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "invop/grid.hpp"
#include "invop/matrix.hpp"
#include "invop/quant.hpp"

namespace invop {

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kCacheFormatVersion = 0x01;

enum class MatrixKind : std::uint8_t { dense = 0x00, quantized = 0x01 };

using MatrixPayload = std::variant<DenseMatrix, QuantizedMatrix>;

std::string encode_matrix(const DenseMatrix& m);
std::string encode_matrix(const QuantizedMatrix& q);

/// `origin` only labels error messages.
MatrixPayload decode_matrix(std::string_view bytes, const std::string& origin);

void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const QuantizedMatrix& q);
MatrixPayload read_matrix_file(const std::filesystem::path& path);
DenseMatrix read_dense_file(const std::filesystem::path& path);
QuantizedMatrix read_quantized_file(const std::filesystem::path& path);

/// One decimal value per line, printed with round-trip precision.
std::string format_vector(std::span<const double> values);
void write_vector_file(const std::filesystem::path& path, std::span<const double> values);
/// Blank lines are skipped; anything unparsable throws std::runtime_error
/// with the file and line number.
std::vector<double> read_vector_file(const std::filesystem::path& path);

struct CacheKey {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::string scheme = "uniform";
    std::optional<int> digits;  // nullopt: the dense inverse

    MatrixKind kind() const noexcept { return digits ? MatrixKind::quantized : MatrixKind::dense; }
    std::string filename() const;
};

/// Inverses of build_uniform keyed by grid and quantization. Entries are
/// written atomically; a file that fails to decode raises CacheError rather
/// than being silently recomputed.
class MatrixCache {
public:
    explicit MatrixCache(std::filesystem::path directory);

    const std::filesystem::path& directory() const noexcept { return directory_; }
    std::filesystem::path path_for(const CacheKey& key) const;

    DenseMatrix inverse(const Grid2D& grid);
    QuantizedMatrix quantized(const Grid2D& grid, int digits);

    /// Entries computed (not loaded) since construction.
    std::size_t misses() const noexcept { return misses_; }

private:
    std::filesystem::path directory_;
    std::size_t misses_ = 0;
};

}  // namespace invop
