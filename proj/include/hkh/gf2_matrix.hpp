#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hkh {

/// Dense matrix over GF(2), rows bit-packed into 64-bit words. Bits past
/// `cols()` in each row are always zero.
class GF2Matrix {
public:
    using Block = std::uint64_t;
    static constexpr std::size_t block_bits = 64;

    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols);

    static GF2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t blocks_per_row() const { return stride_; }

    bool get(std::size_t r, std::size_t c) const
    {
        return (data_[r * stride_ + c / block_bits] >> (c % block_bits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v)
    {
        Block& b = data_[r * stride_ + c / block_bits];
        const Block mask = Block{1} << (c % block_bits);
        b = v ? (b | mask) : (b & ~mask);
    }
    void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / block_bits] ^= Block{1} << (c % block_bits); }

    const Block* row(std::size_t r) const { return data_.data() + r * stride_; }
    Block* row(std::size_t r) { return data_.data() + r * stride_; }

    bool is_zero() const;
    std::size_t popcount() const;
    GF2Matrix transpose() const;

    bool operator==(const GF2Matrix& other) const
    {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Block> data_;
};

/// Sparse matrix over GF(2) in compressed-row form; each row lists its
/// nonzero columns in increasing order.
class SparseGF2Matrix {
public:
    using Index = std::uint32_t;

    SparseGF2Matrix() = default;
    /// Entries are summed mod 2, so a repeated (row, col) pair cancels.
    SparseGF2Matrix(std::size_t rows, std::size_t cols, std::vector<std::pair<Index, Index>> entries);
    explicit SparseGF2Matrix(const GF2Matrix& dense);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return columns_.size(); }
    bool is_zero() const { return columns_.empty(); }

    std::span<const Index> row(std::size_t r) const
    {
        return {columns_.data() + starts_[r], columns_.data() + starts_[r + 1]};
    }
    bool get(std::size_t r, std::size_t c) const;

    GF2Matrix to_dense() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> starts_{0};
    std::vector<Index> columns_;
};

/// Sparse row reduction.
std::size_t rank(const SparseGF2Matrix& m);
std::size_t rank(const GF2Matrix& m);
inline std::size_t kernel_dim(const GF2Matrix& m) { return m.cols() - rank(m); }

/// Product over GF(2); throws Error(dimension_mismatch) when a.cols() != b.rows().
GF2Matrix multiply(const GF2Matrix& a, const GF2Matrix& b);
GF2Matrix multiply(const SparseGF2Matrix& a, const SparseGF2Matrix& b);

}  // namespace hkh
