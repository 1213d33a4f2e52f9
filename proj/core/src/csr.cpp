#include "brinkman/csr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace brinkman {

CsrMatrix CsrMatrix::from_pattern(int rows, int cols,
                                  std::vector<std::vector<int>> columns_per_row) {
    CsrMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_offsets.resize(rows + 1, 0);
    for (int r = 0; r < rows; ++r) {
        auto& row = columns_per_row[r];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        m.row_offsets[r + 1] = m.row_offsets[r] + static_cast<int>(row.size());
    }
    m.col_indices.reserve(m.row_offsets[rows]);
    for (int r = 0; r < rows; ++r)
        m.col_indices.insert(m.col_indices.end(), columns_per_row[r].begin(),
                             columns_per_row[r].end());
    m.values.assign(m.col_indices.size(), 0.0);
    return m;
}

int CsrMatrix::find(int r, int c) const {
    const auto begin = col_indices.begin() + row_offsets[r];
    const auto end = col_indices.begin() + row_offsets[r + 1];
    const auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return -1;
    return static_cast<int>(it - col_indices.begin());
}

void CsrMatrix::add(int r, int c, double v) {
    const int k = find(r, c);
    if (k < 0)
        throw AssemblyError("dof map mismatch: entry (" + std::to_string(r) + "," +
                            std::to_string(c) + ") is not in the sparsity pattern");
    values[k] += v;
}

double CsrMatrix::get(int r, int c) const {
    const int k = find(r, c);
    return k < 0 ? 0.0 : values[k];
}

bool CsrMatrix::same_pattern(const CsrMatrix& other) const {
    return rows == other.rows && cols == other.cols && row_offsets == other.row_offsets &&
           col_indices == other.col_indices;
}

void CsrMatrix::add_scaled(const CsrMatrix& other, double s) {
    if (!same_pattern(other)) throw AssemblyError("add_scaled: sparsity patterns differ");
    for (std::size_t k = 0; k < values.size(); ++k) values[k] += s * other.values[k];
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != cols)
        throw AssemblyError("multiply: vector size does not match matrix columns");
    std::vector<double> y(rows, 0.0);
    for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
            acc += values[k] * x[col_indices[k]];
        y[r] = acc;
    }
    return y;
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double CsrMatrix::inf_norm() const {
    double m = 0.0;
    for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) acc += std::abs(values[k]);
        m = std::max(m, acc);
    }
    return m;
}

}  // namespace brinkman
