#include "cpb/linalg.hpp"

#include <cassert>
#include <sstream>
#include <utility>

namespace cpb::gf {

namespace {

// Forward elimination shared by the solvers. Eliminates in place, applying
// the same row operations to the augmented columns held in `aug` (may be
// null). Returns the rank.
int eliminate(const GaloisField& f, Matrix& a, Matrix* aug) {
    const int n = a.rows();
    const int m = a.cols();
    int rank = 0;
    for (int col = 0; col < m && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r) {
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int c = 0; c < m; ++c) std::swap(a.at(pivot, c), a.at(rank, c));
            if (aug)
                for (int c = 0; c < aug->cols(); ++c)
                    std::swap(aug->at(pivot, c), aug->at(rank, c));
        }
        const Elem inv_p = f.inv(a.at(rank, col));
        for (int c = col; c < m; ++c) a.at(rank, c) = f.mul(a.at(rank, c), inv_p);
        if (aug)
            for (int c = 0; c < aug->cols(); ++c)
                aug->at(rank, c) = f.mul(aug->at(rank, c), inv_p);
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            const Elem factor = a.at(r, col);
            if (factor == 0) continue;
            for (int c = col; c < m; ++c)
                a.at(r, c) = f.add(a.at(r, c), f.mul(factor, a.at(rank, c)));
            if (aug)
                for (int c = 0; c < aug->cols(); ++c)
                    aug->at(r, c) = f.add(aug->at(r, c), f.mul(factor, aug->at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::vector<Elem> solve_linear(const GaloisField& f, Matrix a, std::vector<Elem> b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw DataError("solve_linear: dimension mismatch");
    Matrix rhs(n, 1);
    for (int i = 0; i < n; ++i) rhs.at(i, 0) = b[i];
    const int rank = eliminate(f, a, &rhs);
    if (rank < n) {
        std::ostringstream os;
        os << "solve_linear: singular " << n << "x" << n << " system, rank " << rank;
        throw SingularMatrixError(os.str(), rank);
    }
    std::vector<Elem> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rhs.at(i, 0);
    return x;
}

Matrix invert_matrix(const GaloisField& f, Matrix a) {
    const int n = a.rows();
    if (a.cols() != n) throw DataError("invert_matrix: matrix not square");
    Matrix inv = Matrix::identity(n);
    const int rank = eliminate(f, a, &inv);
    if (rank < n) {
        std::ostringstream os;
        os << "invert_matrix: singular " << n << "x" << n << " matrix, rank " << rank;
        throw SingularMatrixError(os.str(), rank);
    }
    return inv;
}

int matrix_rank(const GaloisField& f, Matrix a) { return eliminate(f, a, nullptr); }

bool is_invertible(const GaloisField& f, const Matrix& a) {
    if (a.rows() != a.cols()) return false;
    Matrix copy = a;
    return eliminate(f, copy, nullptr) == a.rows();
}

Matrix matmul(const GaloisField& f, const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.rows());
    Matrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Elem aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
        }
    }
    return out;
}

std::vector<Elem> matvec(const GaloisField& f, const Matrix& a,
                         const std::vector<Elem>& x) {
    assert(static_cast<int>(x.size()) == a.cols());
    std::vector<Elem> out(static_cast<std::size_t>(a.rows()), 0);
    for (int i = 0; i < a.rows(); ++i) {
        Elem acc = 0;
        for (int j = 0; j < a.cols(); ++j)
            acc = f.add(acc, f.mul(a.at(i, j), x[static_cast<std::size_t>(j)]));
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

Elem dot(const GaloisField& f, const std::vector<Elem>& a,
         const std::vector<Elem>& b) {
    assert(a.size() == b.size());
    Elem acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

}  // namespace cpb::gf
