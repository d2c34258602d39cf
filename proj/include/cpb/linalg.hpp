#pragma once

#include <vector>

#include "cpb/galois.hpp"

namespace cpb::gf {

/// Dense row-major matrix over GF(2^m). Indices are 0-based.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          cells_(static_cast<std::size_t>(rows) * cols, 0) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Elem at(int r, int c) const { return cells_[idx(r, c)]; }
    Elem& at(int r, int c) { return cells_[idx(r, c)]; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>(r) * cols_ + c;
    }
    int rows_, cols_;
    std::vector<Elem> cells_;
};

/// Solves A x = b by Gaussian elimination with deterministic pivoting
/// (first nonzero entry scanning down each column).
/// Throws SingularMatrixError carrying the rank found.
std::vector<Elem> solve_linear(const GaloisField& f, Matrix a, std::vector<Elem> b);

/// Inverse of a square matrix; throws SingularMatrixError if singular.
Matrix invert_matrix(const GaloisField& f, Matrix a);

/// Rank via elimination; never throws on square or rectangular input.
int matrix_rank(const GaloisField& f, Matrix a);

bool is_invertible(const GaloisField& f, const Matrix& a);

Matrix matmul(const GaloisField& f, const Matrix& a, const Matrix& b);

std::vector<Elem> matvec(const GaloisField& f, const Matrix& a,
                         const std::vector<Elem>& x);

Elem dot(const GaloisField& f, const std::vector<Elem>& a,
         const std::vector<Elem>& b);

}  // namespace cpb::gf
