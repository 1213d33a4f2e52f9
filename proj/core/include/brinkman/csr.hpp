#ifndef BRINKMAN_CSR_HPP
#define BRINKMAN_CSR_HPP

#include <span>
#include <vector>

#include "brinkman/errors.hpp"

namespace brinkman {

/// Compressed sparse row matrix; column indices sorted per row, no duplicates.
struct CsrMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> row_offsets;
    std::vector<int> col_indices;
    std::vector<double> values;

    static CsrMatrix from_pattern(int rows, int cols,
                                  std::vector<std::vector<int>> columns_per_row);

    long long nnz() const { return static_cast<long long>(col_indices.size()); }

    /// Index into values for entry (r, c); -1 if the entry is not in the pattern.
    int find(int r, int c) const;
    void add(int r, int c, double v);
    double get(int r, int c) const;

    void set_zero() { values.assign(values.size(), 0.0); }
    bool same_pattern(const CsrMatrix& other) const;
    /// values += s * other.values; patterns must match.
    void add_scaled(const CsrMatrix& other, double s);

    std::vector<double> multiply(std::span<const double> x) const;
    double max_abs() const;
    double inf_norm() const;  // max absolute row sum
};

}  // namespace brinkman

#endif
