#pragma once

#include "fmr/poly.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace fmr {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> zero_matrix(typename FieldTraits<S>::Ctx c, int rows, int cols) {
    return Mat<S>::Constant(rows, cols, FieldTraits<S>::zero(c));
}

template <class S>
Mat<S> identity_matrix(typename FieldTraits<S>::Ctx c, int n) {
    Mat<S> m = zero_matrix<S>(c, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = FieldTraits<S>::one(c);
    return m;
}

template <class S>
struct Echelon {
    Mat<S> m;                 // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivots.size()); }
};

// Exact Gauss-Jordan elimination; pivots are normalized to one.
template <class S>
Echelon<S> rref(Mat<S> a) {
    using T = FieldTraits<S>;
    Echelon<S> out;
    const int rows = static_cast<int>(a.rows()), cols = static_cast<int>(a.cols());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!T::is_zero(a(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) a.row(piv).swap(a.row(r));
        const S inv = S(1) / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || T::is_zero(a(i, c))) continue;
            const S f = a(i, c);
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.m = std::move(a);
    return out;
}

template <class S>
int matrix_rank(const Mat<S>& a) {
    return rref<S>(a).rank();
}

template <class S>
S determinant(typename FieldTraits<S>::Ctx ctx, Mat<S> a) {
    using T = FieldTraits<S>;
    const int n = static_cast<int>(a.rows());
    S det = T::one(ctx);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!T::is_zero(a(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) return T::zero(ctx);
        if (piv != c) {
            a.row(piv).swap(a.row(c));
            det = -det;
        }
        det *= a(c, c);
        const S inv = T::one(ctx) / a(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (T::is_zero(a(i, c))) continue;
            const S f = a(i, c) * inv;
            for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

// Columns spanning the right kernel; free coordinates become unit vectors.
template <class S>
Mat<S> kernel_basis(typename FieldTraits<S>::Ctx ctx, const Mat<S>& a) {
    const auto e = rref<S>(a);
    const int cols = static_cast<int>(a.cols());
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) free.push_back(c);
    Mat<S> k = zero_matrix<S>(ctx, cols, static_cast<int>(free.size()));
    for (size_t j = 0; j < free.size(); ++j) {
        k(free[j], j) = FieldTraits<S>::one(ctx);
        for (int r = 0; r < e.rank(); ++r) k(e.pivots[r], j) = -e.m(r, free[j]);
    }
    return k;
}

// One solution of a x = b, or nullopt when inconsistent.
template <class S>
std::optional<Vec<S>> solve_linear(typename FieldTraits<S>::Ctx ctx, const Mat<S>& a, const Vec<S>& b) {
    Mat<S> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    const auto e = rref<S>(aug);
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    Vec<S> x = Vec<S>::Constant(a.cols(), FieldTraits<S>::zero(ctx));
    for (int r = 0; r < e.rank(); ++r) x(e.pivots[r]) = e.m(r, a.cols());
    return x;
}

// A linear subspace of affine n-space cut out by independent linear forms.
template <class S>
class LinearSubspace {
public:
    using Ctx = typename FieldTraits<S>::Ctx;

    LinearSubspace(Ctx ctx, int ambient, std::vector<MultiPoly<S>> equations)
        : ctx_(ctx), n_(ambient), eq_(std::move(equations)) {
        for (const auto& l : eq_) {
            if (l.nvars() != n_) throw FieldError("subspace equation in wrong number of variables");
            if (!l.is_zero() && (!l.is_homogeneous() || l.degree() != 1))
                throw FieldError("subspace equations must be linear forms");
        }
        if (matrix_rank<S>(matrix()) != codim())
            throw FieldError("subspace equations are linearly dependent");
    }
    static LinearSubspace whole(Ctx ctx, int ambient) { return LinearSubspace(ctx, ambient, {}); }

    Ctx ctx() const { return ctx_; }
    int ambient() const { return n_; }
    int codim() const { return static_cast<int>(eq_.size()); }
    int dim() const { return n_ - codim(); }
    const std::vector<MultiPoly<S>>& equations() const { return eq_; }

    Mat<S> matrix() const {
        Mat<S> a = zero_matrix<S>(ctx_, codim(), n_);
        for (int r = 0; r < codim(); ++r) {
            const auto v = eq_[r].linear_coeffs();
            for (int c = 0; c < n_; ++c) a(r, c) = v[c];
        }
        return a;
    }
    // n x dim matrix whose columns span the subspace.
    Mat<S> parametrization() const { return kernel_basis<S>(ctx_, matrix()); }

    bool contains(const std::vector<S>& x) const {
        for (const auto& l : eq_)
            if (!FieldTraits<S>::is_zero(l.eval(x))) return false;
        return true;
    }

private:
    Ctx ctx_;
    int n_;
    std::vector<MultiPoly<S>> eq_;
};

// Images of the ambient coordinates under x = K y.
template <class S>
std::vector<MultiPoly<S>> linear_images(typename FieldTraits<S>::Ctx ctx, const Mat<S>& k) {
    const int n = static_cast<int>(k.rows()), m = static_cast<int>(k.cols());
    std::vector<MultiPoly<S>> images;
    for (int i = 0; i < n; ++i) {
        std::vector<S> row(m);
        for (int j = 0; j < m; ++j) row[j] = k(i, j);
        images.push_back(MultiPoly<S>::linear(ctx, row));
    }
    return images;
}

template <class S>
MultiPoly<S> substitute_linear(const MultiPoly<S>& p, const Mat<S>& k) {
    if (k.rows() != p.nvars()) throw FieldError("substitution matrix has wrong shape");
    return p.compose(linear_images<S>(p.ctx(), k));
}

template <class S>
MultiPoly<S> restrict_to_subspace(const MultiPoly<S>& p, const LinearSubspace<S>& s) {
    if (s.ambient() != p.nvars()) throw FieldError("subspace and polynomial ambient dimensions differ");
    return substitute_linear(p, s.parametrization());
}

template <class S>
class QuadraticForm {
public:
    using Ctx = typename FieldTraits<S>::Ctx;

    QuadraticForm(Ctx ctx, Mat<S> gram) : ctx_(ctx), g_(std::move(gram)) {
        if (g_.rows() != g_.cols()) throw FieldError("Gram matrix must be square");
        for (int i = 0; i < g_.rows(); ++i)
            for (int j = i + 1; j < g_.cols(); ++j)
                if (g_(i, j) != g_(j, i)) throw FieldError("Gram matrix must be symmetric");
    }

    Ctx ctx() const { return ctx_; }
    int dim() const { return static_cast<int>(g_.rows()); }
    const Mat<S>& gram() const { return g_; }
    int rank() const { return matrix_rank<S>(g_); }
    // Vectors v with gram * v = 0; their count is dim - rank.
    Mat<S> radical() const { return kernel_basis<S>(ctx_, g_); }
    QuadraticForm congruent(const Mat<S>& a) const { return QuadraticForm(ctx_, a.transpose() * g_ * a); }
    S eval(const Vec<S>& x) const { return (x.transpose() * g_ * x)(0, 0); }

private:
    Ctx ctx_;
    Mat<S> g_;
};

template <class S>
QuadraticForm<S> quadratic_form_of(const MultiPoly<S>& p) {
    using T = FieldTraits<S>;
    if (T::characteristic(p.ctx()) == 2)
        throw FieldError("quadratic form polarization is ambiguous in characteristic 2");
    if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != 2))
        throw FieldError("quadratic_form_of needs a homogeneous quadratic polynomial");
    const int n = p.nvars();
    Mat<S> g = zero_matrix<S>(p.ctx(), n, n);
    const S half = T::one(p.ctx()) / T::from_int(p.ctx(), 2);
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            for (unsigned k = 0; k < m[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) {
            g(idx[0], idx[0]) = c;
        } else {
            g(idx[0], idx[1]) = c * half;
            g(idx[1], idx[0]) = c * half;
        }
    }
    return QuadraticForm<S>(p.ctx(), std::move(g));
}

template <class S>
MultiPoly<S> polynomial_of(const QuadraticForm<S>& q) {
    const int n = q.dim();
    MultiPoly<S> p(q.ctx(), n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Monomial m = Monomial::var(n, i) * Monomial::var(n, j);
            p.add_term(m, i == j ? q.gram()(i, i) : q.gram()(i, j) + q.gram()(j, i));
        }
    return p;
}

// Random invertible n x n matrix.
template <class S>
Mat<S> random_invertible(typename FieldTraits<S>::Ctx ctx, int n, Rng& rng) {
    for (;;) {
        Mat<S> a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = FieldTraits<S>::random(ctx, rng);
        if (matrix_rank<S>(a) == n) return a;
    }
}

}  // namespace fmr
