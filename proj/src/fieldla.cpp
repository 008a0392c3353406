#include "lochom/fieldla.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lochom {

PrimeField::PrimeField(std::uint32_t q) : q_(q)
{
    if (q >= (1u << 31) || !is_prime(q)) throw std::invalid_argument("field modulus must be a prime below 2^31, got " + std::to_string(q));
}

bool PrimeField::is_prime(std::uint64_t q)
{
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a == 0) throw std::domain_error("inverse of zero");
    // Fermat: a^(q-2).
    std::uint64_t result = 1;
    std::uint64_t base = a;
    std::uint32_t e = q_ - 2;
    while (e) {
        if (e & 1) result = result * base % q_;
        base = base * base % q_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t PrimeField::from_int(long long v) const
{
    long long r = v % static_cast<long long>(q_);
    if (r < 0) r += q_;
    return static_cast<std::uint32_t>(r);
}

// -- FieldMatrix ----------------------------------------------------------------

FieldMatrix::FieldMatrix(int rows, int cols, std::uint32_t q) : rows_(rows), field_(q)
{
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix shape must be nonnegative");
    columns_.resize(static_cast<std::size_t>(cols));
}

FieldMatrix FieldMatrix::from_dense(const std::vector<std::vector<long long>>& rows, int cols, std::uint32_t q)
{
    FieldMatrix m(static_cast<int>(rows.size()), cols, q);
    for (int j = 0; j < cols; ++j) {
        std::vector<std::pair<int, long long>> entries;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != static_cast<std::size_t>(cols)) throw std::invalid_argument("ragged dense matrix");
            entries.emplace_back(static_cast<int>(i), rows[i][static_cast<std::size_t>(j)]);
        }
        m.set_column(j, std::move(entries));
    }
    return m;
}

void FieldMatrix::set_column(int j, std::vector<std::pair<int, long long>> entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseColumn col;
    for (std::size_t i = 0; i < entries.size();) {
        int row = entries[i].first;
        if (row < 0 || row >= rows_) throw std::out_of_range("row index out of range");
        long long sum = 0;
        for (; i < entries.size() && entries[i].first == row; ++i) {
            sum = static_cast<long long>(field_.from_int(sum + static_cast<long long>(field_.from_int(entries[i].second))));
        }
        std::uint32_t v = field_.from_int(sum);
        if (v != 0) col.push_back({row, v});
    }
    columns_.at(static_cast<std::size_t>(j)) = std::move(col);
}

void FieldMatrix::push_column(SparseColumn col)
{
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i].row < 0 || col[i].row >= rows_ || (i && col[i].row <= col[i - 1].row) || col[i].value == 0 ||
            col[i].value >= modulus()) {
            throw std::invalid_argument("column is not in canonical sparse form");
        }
    }
    columns_.push_back(std::move(col));
}

std::uint32_t FieldMatrix::at(int row, int col) const
{
    const auto& c = column(col);
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, int r) { return e.row < r; });
    return it != c.end() && it->row == row ? it->value : 0;
}

FieldMatrix FieldMatrix::transpose() const
{
    FieldMatrix t(cols(), rows_, modulus());
    std::vector<SparseColumn> out(static_cast<std::size_t>(rows_));
    for (int j = 0; j < cols(); ++j) {
        for (const auto& e : column(j)) out[static_cast<std::size_t>(e.row)].push_back({j, e.value});
    }
    t.columns_ = std::move(out);
    return t;
}

FieldMatrix FieldMatrix::hconcat(const FieldMatrix& a, const FieldMatrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat needs equal row counts");
    if (a.modulus() != b.modulus()) throw std::invalid_argument("hconcat needs equal moduli");
    FieldMatrix m(a.rows(), 0, a.modulus());
    m.columns_ = a.columns_;
    m.columns_.insert(m.columns_.end(), b.columns_.begin(), b.columns_.end());
    return m;
}

// -- reduction -----------------------------------------------------------------

SparseColumn axpy(const PrimeField& f, const SparseColumn& a, std::uint32_t factor, const SparseColumn& b)
{
    SparseColumn out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].row < a[i].row) {
            out.push_back({b[j].row, f.mul(factor, b[j].value)});
            ++j;
        } else {
            std::uint32_t v = f.add(a[i].value, f.mul(factor, b[j].value));
            if (v != 0) out.push_back({a[i].row, v});
            ++i;
            ++j;
        }
    }
    return out;
}

ColumnReducer::ColumnReducer(PrimeField field, int rows)
    : field_(field), pivot_of_row_(static_cast<std::size_t>(rows), -1)
{
}

bool ColumnReducer::reduce(SparseColumn& col) const
{
    while (!col.empty()) {
        const Entry low = col.back();
        int k = pivot_of_row_.at(static_cast<std::size_t>(low.row));
        if (k < 0) return true;
        const SparseColumn& piv = stored_[static_cast<std::size_t>(k)];
        std::uint32_t factor = field_.neg(field_.mul(low.value, field_.inv(piv.back().value)));
        col = axpy(field_, col, factor, piv);
    }
    return false;
}

bool ColumnReducer::add(SparseColumn col)
{
    if (!reduce(col)) return false;
    pivot_of_row_[static_cast<std::size_t>(col.back().row)] = static_cast<int>(stored_.size());
    stored_.push_back(std::move(col));
    return true;
}

const SparseColumn* ColumnReducer::pivot_column(int row) const
{
    int k = pivot_of_row_.at(static_cast<std::size_t>(row));
    return k < 0 ? nullptr : &stored_[static_cast<std::size_t>(k)];
}

namespace {

std::size_t rank_f2_packed(const FieldMatrix& m)
{
    const std::size_t words = (static_cast<std::size_t>(m.rows()) + 63) / 64;
    if (words == 0) return 0;
    std::vector<std::vector<std::uint64_t>> pivots(static_cast<std::size_t>(m.rows()));
    std::size_t r = 0;
    std::vector<std::uint64_t> bits(words);
    for (int j = 0; j < m.cols(); ++j) {
        std::fill(bits.begin(), bits.end(), 0);
        for (const auto& e : m.column(j)) bits[static_cast<std::size_t>(e.row) / 64] |= 1ull << (e.row % 64);
        for (;;) {
            std::size_t w = words;
            while (w > 0 && bits[w - 1] == 0) --w;
            if (w == 0) break;
            int top = static_cast<int>((w - 1) * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(bits[w - 1])));
            auto& piv = pivots[static_cast<std::size_t>(top)];
            if (piv.empty()) {
                piv = bits;
                ++r;
                break;
            }
            for (std::size_t k = 0; k < w; ++k) bits[k] ^= piv[k];
        }
    }
    return r;
}

}  // namespace

std::size_t rank(const FieldMatrix& m)
{
    if (m.modulus() == 2) return rank_f2_packed(m);
    ColumnReducer red(m.field(), m.rows());
    for (int j = 0; j < m.cols(); ++j) red.add(m.column(j));
    return red.rank();
}

std::size_t rank_of_union(const FieldMatrix& a, const FieldMatrix& b) { return rank(FieldMatrix::hconcat(a, b)); }

std::vector<SparseColumn> kernel_basis(const FieldMatrix& m)
{
    const PrimeField& f = m.field();
    std::vector<int> pivot_of_row(static_cast<std::size_t>(m.rows()), -1);
    std::vector<SparseColumn> reduced;
    std::vector<SparseColumn> combos;  // combos[k] expresses reduced[k] in the original columns
    std::vector<SparseColumn> kernel;
    for (int j = 0; j < m.cols(); ++j) {
        SparseColumn col = m.column(j);
        SparseColumn combo{{j, 1}};
        while (!col.empty()) {
            int k = pivot_of_row[static_cast<std::size_t>(col.back().row)];
            if (k < 0) break;
            const auto& piv = reduced[static_cast<std::size_t>(k)];
            std::uint32_t factor = f.neg(f.mul(col.back().value, f.inv(piv.back().value)));
            col = axpy(f, col, factor, piv);
            combo = axpy(f, combo, factor, combos[static_cast<std::size_t>(k)]);
        }
        if (col.empty()) {
            kernel.push_back(std::move(combo));
        } else {
            pivot_of_row[static_cast<std::size_t>(col.back().row)] = static_cast<int>(reduced.size());
            reduced.push_back(std::move(col));
            combos.push_back(std::move(combo));
        }
    }
    return kernel;
}

std::vector<int> persistent_reduce(const FieldMatrix& d, std::span<const int> level, std::span<const int> degree)
{
    const int n = d.cols();
    if (d.rows() != n) throw std::invalid_argument("boundary matrix must be square");
    if (level.size() != static_cast<std::size_t>(n) || degree.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("level and degree tags must cover every column");
    }
    int max_degree = -1;
    bool seen_second = false;
    for (int j = 0; j < n; ++j) {
        int lv = level[static_cast<std::size_t>(j)];
        if (lv != 1 && lv != 2) throw std::invalid_argument("levels must be 1 or 2");
        if (lv == 2) seen_second = true;
        else if (seen_second) throw std::invalid_argument("ordering violation: level-1 column after level-2 column");
        for (const auto& e : d.column(j)) {
            if (e.row >= j || degree[static_cast<std::size_t>(e.row)] != degree[static_cast<std::size_t>(j)] - 1) {
                throw std::invalid_argument("ordering violation: boundary entry not a preceding facet");
            }
        }
        max_degree = std::max(max_degree, degree[static_cast<std::size_t>(j)]);
    }

    ColumnReducer red(d.field(), n);
    std::vector<char> positive(static_cast<std::size_t>(n), 0);
    std::vector<char> killed(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
        SparseColumn col = d.column(j);
        if (red.reduce(col)) {
            killed[static_cast<std::size_t>(col.back().row)] = 1;
            red.add(std::move(col));
        } else {
            positive[static_cast<std::size_t>(j)] = 1;
        }
    }
    std::vector<int> surviving(static_cast<std::size_t>(max_degree + 1), 0);
    for (int j = 0; j < n; ++j) {
        if (positive[static_cast<std::size_t>(j)] && !killed[static_cast<std::size_t>(j)] &&
            level[static_cast<std::size_t>(j)] == 1) {
            ++surviving[static_cast<std::size_t>(degree[static_cast<std::size_t>(j)])];
        }
    }
    return surviving;
}

}  // namespace lochom
