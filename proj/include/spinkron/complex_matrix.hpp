#pragma once

#include <algorithm>
#include <complex>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinkron {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Dense square complex matrix, row-major storage.
///
/// The universal carrier for everything in this library: spin operators,
/// Hamiltonians, permutation matrices, eigenvector columns. Values are
/// treated as immutable once built; all operations return fresh matrices.
/// Non-finite entries (NaN/Inf) are rejected at the data entry points
/// (`from_rows`, `set`) so a matrix in circulation is always finite.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, Complex{0.0, 0.0}) {
        if (dim == 0)
            throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m.a_[i * dim + i] = Complex{1.0, 0.0};
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t n = rows.size();
        ComplexMatrix m(n);
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != n)
                throw std::invalid_argument("ComplexMatrix::from_rows: matrix must be square");
            std::size_t c = 0;
            for (Complex v : row)
                m.set(r, c++, v);
            ++r;
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex operator()(std::size_t r, std::size_t c) const {
        check_index(r, c);
        return a_[r * dim_ + c];
    }

    /// Sole mutation path; rejects NaN/Inf so the finiteness invariant
    /// cannot be broken from outside.
    void set(std::size_t r, std::size_t c, Complex v) {
        check_index(r, c);
        if (!is_finite(v))
            throw std::invalid_argument("ComplexMatrix::set: non-finite entry at (" +
                                        std::to_string(r) + "," + std::to_string(c) + ")");
        a_[r * dim_ + c] = v;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
        require_same_dim(x, y, "operator+");
        ComplexMatrix out(x.dim_);
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            out.a_[i] = x.a_[i] + y.a_[i];
        return out;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
        require_same_dim(x, y, "operator-");
        ComplexMatrix out(x.dim_);
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            out.a_[i] = x.a_[i] - y.a_[i];
        return out;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& x) {
        ComplexMatrix out(x.dim_);
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            out.a_[i] = s * x.a_[i];
        return out;
    }

    friend ComplexMatrix operator*(double s, const ComplexMatrix& x) {
        return Complex{s, 0.0} * x;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
        require_same_dim(x, y, "operator*");
        const std::size_t n = x.dim_;
        ComplexMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const Complex xv = x.a_[r * n + k];
                if (xv == Complex{0.0, 0.0})
                    continue;
                for (std::size_t c = 0; c < n; ++c)
                    out.a_[r * n + c] += xv * y.a_[k * n + c];
            }
        return out;
    }

    friend bool operator==(const ComplexMatrix& x, const ComplexMatrix& y) {
        return x.dim_ == y.dim_ && x.a_ == y.a_;
    }

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= dim_ || c >= dim_)
            throw std::out_of_range("ComplexMatrix: index (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") out of range for dim " +
                                    std::to_string(dim_));
    }

    static void require_same_dim(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const char* what) {
        if (x.dim_ != y.dim_)
            throw std::invalid_argument(std::string("ComplexMatrix ") + what +
                                        ": dimension mismatch (" + std::to_string(x.dim_) +
                                        " vs " + std::to_string(y.dim_) + ")");
    }

    std::size_t dim_;
    std::vector<Complex> a_;
};

inline ComplexMatrix identity(std::size_t dim) { return ComplexMatrix::identity(dim); }

/// Kronecker (direct) product of an N x N and an M x M matrix.
///
/// Entry layout: the left factor indexes blocks, i.e.
///   (A (x) B)[n*M + m, i*M + j] = A[n,i] * B[m,j]
/// so the result is the block matrix whose (n,i) block is A[n,i] * B.
/// Every Hamiltonian in this library is assembled through this one function.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    ComplexMatrix out(n * m);
    for (std::size_t bn = 0; bn < n; ++bn)
        for (std::size_t bi = 0; bi < n; ++bi) {
            const Complex av = a(bn, bi);
            if (av == Complex{0.0, 0.0})
                continue;
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c)
                    out.set(bn * m + r, bi * m + c, av * b(r, c));
        }
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& x) {
    ComplexMatrix out(x.dim());
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            out.set(c, r, std::conj(x(r, c)));
    return out;
}

inline Complex trace(const ComplexMatrix& x) {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < x.dim(); ++i)
        t += x(i, i);
    return t;
}

/// Largest entry magnitude (max norm).
inline double max_abs(const ComplexMatrix& x) {
    double m = 0.0;
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            m = std::max(m, std::abs(x(r, c)));
    return m;
}

inline double frobenius_norm(const ComplexMatrix& x) {
    double s = 0.0;
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            s += std::norm(x(r, c));
    return std::sqrt(s);
}

/// True iff max |X[i,j] - conj(X[j,i])| <= tol * max(1, max_abs(X)).
inline bool is_hermitian(const ComplexMatrix& x, double tol = 1e-12) {
    if (tol < 0.0)
        throw std::invalid_argument("is_hermitian: tol must be >= 0");
    double dev = 0.0;
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = r; c < x.dim(); ++c)
            dev = std::max(dev, std::abs(x(r, c) - std::conj(x(c, r))));
    return dev <= tol * std::max(1.0, max_abs(x));
}

/// Entrywise comparison with a mixed absolute/relative tolerance:
/// max |X - Y| <= tol * max(1, max entry magnitude of either).
inline bool approx_equal(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
    if (x.dim() != y.dim())
        return false;
    const double scale = std::max(1.0, std::max(max_abs(x), max_abs(y)));
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            if (std::abs(x(r, c) - y(r, c)) > tol * scale)
                return false;
    return true;
}

inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y - y * x;
}

}  // namespace spinkron
