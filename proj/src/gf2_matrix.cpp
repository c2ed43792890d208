#include "hkh/gf2_matrix.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <string>
#include <utility>

namespace hkh {

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + block_bits - 1) / block_bits), data_(rows * stride_, 0)
{
}

GF2Matrix GF2Matrix::identity(std::size_t n)
{
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

bool GF2Matrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Block b) { return b == 0; });
}

std::size_t GF2Matrix::popcount() const
{
    std::size_t s = 0;
    for (Block b : data_)
        s += static_cast<std::size_t>(std::popcount(b));
    return s;
}

GF2Matrix GF2Matrix::transpose() const
{
    GF2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const Block* src = row(r);
        for (std::size_t k = 0; k < stride_; ++k) {
            Block b = src[k];
            while (b) {
                const std::size_t c = k * block_bits + static_cast<std::size_t>(std::countr_zero(b));
                t.set(c, r, true);
                b &= b - 1;
            }
        }
    }
    return t;
}

SparseGF2Matrix::SparseGF2Matrix(std::size_t rows, std::size_t cols, std::vector<std::pair<Index, Index>> entries)
    : rows_(rows), cols_(cols), starts_(rows + 1, 0)
{
    for (const auto& [r, c] : entries) {
        if (r >= rows || c >= cols)
            throw Error(ErrorKind::dimension_mismatch, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                                           ") outside a " + std::to_string(rows) + "x" +
                                                           std::to_string(cols) + " matrix");
        ++starts_[r + 1];
    }
    for (std::size_t r = 0; r < rows; ++r)
        starts_[r + 1] += starts_[r];
    columns_.resize(entries.size());
    std::vector<std::size_t> fill(starts_.begin(), starts_.end() - 1);
    for (const auto& [r, c] : entries)
        columns_[fill[r]++] = c;

    // Sort each row and drop pairs of equal columns, compacting in place.
    std::size_t out = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(starts_[r]);
        const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(starts_[r + 1]);
        // Rows are short; insertion sort beats std::sort here.
        for (auto it = first; it != last; ++it)
            for (auto j = it; j != first && *(j - 1) > *j; --j)
                std::iter_swap(j - 1, j);
        starts_[r] = out;
        for (auto it = first; it != last;) {
            auto next = it + 1;
            std::size_t count = 1;
            while (next != last && *next == *it) {
                ++next;
                ++count;
            }
            if (count % 2)
                columns_[out++] = *it;
            it = next;
        }
    }
    starts_[rows] = out;
    columns_.resize(out);
}

SparseGF2Matrix::SparseGF2Matrix(const GF2Matrix& dense) : rows_(dense.rows()), cols_(dense.cols())
{
    starts_.reserve(rows_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        const GF2Matrix::Block* p = dense.row(r);
        for (std::size_t k = 0; k < dense.blocks_per_row(); ++k)
            for (GF2Matrix::Block bits = p[k]; bits; bits &= bits - 1)
                columns_.push_back(
                    static_cast<Index>(k * GF2Matrix::block_bits + static_cast<std::size_t>(std::countr_zero(bits))));
        starts_.push_back(columns_.size());
    }
}

bool SparseGF2Matrix::get(std::size_t r, std::size_t c) const
{
    const auto cols = row(r);
    return std::binary_search(cols.begin(), cols.end(), static_cast<Index>(c));
}

GF2Matrix SparseGF2Matrix::to_dense() const
{
    GF2Matrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (Index c : row(r))
            m.set(r, c, true);
    return m;
}

// Differentials are very sparse. Reduced rows are stored as sorted column
// lists, each owning its last (highest) column; pivoting on the last column
// rather than the first keeps fill-in about four times lower here. The row
// being reduced sits in a dense bit buffer, so adding a stored row costs one
// flip per entry, and its leading column only ever moves down.
std::size_t rank(const SparseGF2Matrix& m)
{
    using Index = SparseGF2Matrix::Index;
    using Block = GF2Matrix::Block;
    constexpr std::size_t bits = GF2Matrix::block_bits;
    std::vector<Block> acc((m.cols() + bits - 1) / bits, 0);
    // Stored rows live back to back in one pool; starts[k] opens row k.
    std::vector<Index> pool;
    std::vector<std::size_t> starts{0};
    std::vector<std::int32_t> pivot_of(m.cols(), -1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto input = m.row(r);
        if (input.empty())
            continue;
        for (Index c : input)
            acc[c / bits] ^= Block{1} << (c % bits);
        std::ptrdiff_t w = static_cast<std::ptrdiff_t>(input.back() / bits);
        while (true) {
            while (w >= 0 && acc[static_cast<std::size_t>(w)] == 0)
                --w;
            if (w < 0)
                break;
            const Block top = acc[static_cast<std::size_t>(w)];
            const std::size_t lead = static_cast<std::size_t>(w) * bits + (bits - 1 - static_cast<std::size_t>(std::countl_zero(top)));
            const std::int32_t q = pivot_of[lead];
            if (q < 0) {
                for (std::size_t k = 0; k <= static_cast<std::size_t>(w); ++k) {
                    for (Block b = acc[k]; b; b &= b - 1)
                        pool.push_back(static_cast<Index>(k * bits + static_cast<std::size_t>(std::countr_zero(b))));
                    acc[k] = 0;
                }
                pivot_of[lead] = static_cast<std::int32_t>(starts.size() - 1);
                starts.push_back(pool.size());
                break;
            }
            for (std::size_t k = starts[static_cast<std::size_t>(q)]; k < starts[static_cast<std::size_t>(q) + 1]; ++k)
                acc[pool[k] / bits] ^= Block{1} << (pool[k] % bits);
        }
    }
    return starts.size() - 1;
}

std::size_t rank(const GF2Matrix& m) { return rank(SparseGF2Matrix(m)); }

GF2Matrix multiply(const GF2Matrix& a, const GF2Matrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorKind::dimension_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                                       std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                                       "x" + std::to_string(b.cols()));
    GF2Matrix out(a.rows(), b.cols());
    const std::size_t stride = out.blocks_per_row();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const GF2Matrix::Block* src = a.row(r);
        GF2Matrix::Block* dst = out.row(r);
        for (std::size_t k = 0; k < a.blocks_per_row(); ++k) {
            GF2Matrix::Block bits = src[k];
            while (bits) {
                const std::size_t t = k * GF2Matrix::block_bits + static_cast<std::size_t>(std::countr_zero(bits));
                const GF2Matrix::Block* brow = b.row(t);
                for (std::size_t j = 0; j < stride; ++j)
                    dst[j] ^= brow[j];
                bits &= bits - 1;
            }
        }
    }
    return out;
}

GF2Matrix multiply(const SparseGF2Matrix& a, const SparseGF2Matrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorKind::dimension_mismatch, "cannot multiply " + std::to_string(a.rows()) + "x" +
                                                       std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                                                       "x" + std::to_string(b.cols()));
    GF2Matrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (SparseGF2Matrix::Index t : a.row(r))
            for (SparseGF2Matrix::Index c : b.row(t))
                out.flip(r, c);
    return out;
}

}  // namespace hkh
