#pragma once

#include <vector>

#include "holo/ratfunc.hpp"

namespace holo {

struct Matrix {
    std::vector<std::vector<RatFunc>> entries;

    Matrix() = default;
    Matrix(size_t r, size_t c) : entries(r, std::vector<RatFunc>(c)) {}

    size_t rows() const { return entries.size(); }
    size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
    std::vector<RatFunc>& operator[](size_t i) { return entries[i]; }
    const std::vector<RatFunc>& operator[](size_t i) const { return entries[i]; }

    void check_rectangular() const {
        for (const auto& r : entries)
            if (r.size() != cols()) throw DomainError("matrix is not rectangular");
    }
};

namespace detail {

struct Echelon {
    std::vector<std::vector<MPoly>> a;
    std::vector<size_t> pivot_cols;  // pivot column of step i (row i after elimination)
};

// fraction-free (Bareiss) forward elimination with row pivoting
inline Echelon eliminate_ff(std::vector<std::vector<MPoly>> a) {
    Echelon e;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    MPoly prev(1);
    size_t pr = 0;
    for (size_t col = 0; col < cols && pr < rows; col++) {
        size_t piv = pr;
        while (piv < rows && a[piv][col].is_zero()) piv++;
        if (piv == rows) continue;
        std::swap(a[piv], a[pr]);
        for (size_t i = pr + 1; i < rows; i++) {
            for (size_t j = col + 1; j < cols; j++)
                a[i][j] = (a[pr][col] * a[i][j] - a[i][col] * a[pr][j]).divexact(prev);
            a[i][col] = MPoly();
        }
        prev = a[pr][col];
        e.pivot_cols.push_back(col);
        pr++;
    }
    e.a = std::move(a);
    return e;
}

inline std::vector<std::vector<MPoly>> clear_rows(const Matrix& m) {
    std::vector<std::vector<MPoly>> a(m.rows());
    for (size_t i = 0; i < m.rows(); i++) {
        RatFunc l = rf_lcm_den(m[i]);
        a[i].reserve(m.cols());
        for (size_t j = 0; j < m.cols(); j++) {
            RatFunc v = m[i][j] * l;
            if (!v.is_polynomial()) throw Error("internal: denominator clearing failed");
            a[i].push_back(v.num() * MPoly(v.den().constant_value().inv()));
        }
    }
    return a;
}

// divide a polynomial vector by its gcd and content, canonical sign
inline std::vector<RatFunc> normalize_poly_vector(std::vector<MPoly> nums) {
    MPoly g;
    for (const auto& c : nums) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_one()) break;
    }
    std::vector<RatFunc> v(nums.size());
    if (g.is_zero()) return v;
    Rat content(0);
    for (auto& c : nums) {
        if (c.is_zero()) continue;
        if (!g.is_one()) c = c.divexact(g);
        content = rat_gcd(content, c.content());
    }
    for (const auto& c : nums)
        if (!c.is_zero()) {
            if (c.lead_coeff().sign() < 0) content = -content;
            break;
        }
    MPoly inv{content.inv()};
    for (size_t i = 0; i < nums.size(); i++)
        if (!nums[i].is_zero()) v[i] = RatFunc(nums[i] * inv);
    return v;
}

// scale a vector to a primitive polynomial vector with canonical sign
inline std::vector<RatFunc> normalize_vector(std::vector<RatFunc> v) {
    RatFunc l = rf_lcm_den(v);
    MPoly g;
    std::vector<MPoly> nums(v.size());
    for (size_t i = 0; i < v.size(); i++) {
        RatFunc p = v[i] * l;
        nums[i] = p.num() * MPoly(p.den().constant_value().inv());
        if (!nums[i].is_zero()) g = poly_gcd(g, nums[i]);
    }
    if (g.is_zero()) return v;
    Rat content(0);
    for (auto& n : nums) {
        n = n.divexact(g);
        content = rat_gcd(content, n.content());
    }
    int sign = 0;
    for (const auto& n : nums)
        if (!n.is_zero()) {
            sign = n.lead_coeff().sign();
            break;
        }
    if (sign < 0) content = -content;
    for (size_t i = 0; i < v.size(); i++) v[i] = RatFunc(nums[i] * MPoly(content.inv()));
    return v;
}

}  // namespace detail

inline size_t rank(const Matrix& m) {
    m.check_rectangular();
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return detail::eliminate_ff(detail::clear_rows(m)).pivot_cols.size();
}

// basis of the right nullspace; each vector is normalized to a primitive
// polynomial vector, and m * v = 0 holds exactly
inline std::vector<std::vector<RatFunc>> nullspace(const Matrix& m) {
    m.check_rectangular();
    size_t cols = m.cols();
    std::vector<std::vector<RatFunc>> basis;
    if (cols == 0) return basis;
    if (m.rows() == 0) {
        for (size_t j = 0; j < cols; j++) {
            std::vector<RatFunc> v(cols);
            v[j] = RatFunc(1);
            basis.push_back(std::move(v));
        }
        return basis;
    }
    detail::Echelon e = detail::eliminate_ff(detail::clear_rows(m));
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : e.pivot_cols) is_pivot[c] = true;
    for (size_t fc = 0; fc < cols; fc++) {
        if (is_pivot[fc]) continue;
        // fraction-free back-substitution; the implied common denominator is a
        // scalar for the vector and is dropped
        std::vector<MPoly> u(cols);
        u[fc] = MPoly(1);
        for (int pi = (int)e.pivot_cols.size() - 1; pi >= 0; pi--) {
            size_t pcol = e.pivot_cols[pi];
            if (pcol > fc) continue;  // columns right of fc are zero in this vector
            MPoly acc;
            for (size_t j = pcol + 1; j <= fc; j++)
                if (!u[j].is_zero() && !e.a[pi][j].is_zero()) acc += e.a[pi][j] * u[j];
            const MPoly& pivot = e.a[pi][pcol];
            for (size_t j = pcol + 1; j < cols; j++)
                if (!u[j].is_zero()) u[j] *= pivot;
            u[pcol] = -acc;
        }
        basis.push_back(detail::normalize_poly_vector(std::move(u)));
    }
    return basis;
}

// one solution of A x = b over the rational-function field, if any
inline std::optional<std::vector<RatFunc>> solve(const Matrix& a, const std::vector<RatFunc>& b) {
    a.check_rectangular();
    if (a.rows() != b.size()) throw DomainError("solve: dimension mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) aug[i][j] = a[i][j];
        aug[i][a.cols()] = -b[i];
    }
    for (const auto& v : nullspace(aug)) {
        const RatFunc& lambda = v[a.cols()];
        if (lambda.is_zero()) continue;
        std::vector<RatFunc> x(a.cols());
        for (size_t j = 0; j < a.cols(); j++) x[j] = v[j] / lambda;
        return x;
    }
    return std::nullopt;
}

}  // namespace holo
