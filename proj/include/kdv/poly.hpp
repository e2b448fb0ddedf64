#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace kdv {

/// Univariate polynomial with dense double coefficients, c[m] * x^m.
class Poly1 {
public:
    Poly1() : c_(1, 0.0) {}
    explicit Poly1(std::vector<double> coeffs);
    static Poly1 constant(double v);
    static Poly1 monomial(int m, double v);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int m) const;
    bool is_zero() const;
    double max_abs_coeff() const;

    double eval(double x) const;
    Poly1 derivative() const;
    /// Antiderivative with zero constant term.
    Poly1 antiderivative() const;
    /// Exact integral of p(x)^2 over (0, L).
    double l2_norm_sq(double length) const;

    Poly1 operator+(const Poly1& o) const;
    Poly1 operator-(const Poly1& o) const;
    Poly1 operator*(const Poly1& o) const;
    Poly1 operator*(double s) const;

private:
    std::vector<double> c_;
    void trim();
};

/// Affine change of variables for BiPoly::affine:
/// v1 <- a1*x + b1*y + c1,  v2 <- a2*x + b2*y + c2.
struct AffineMap2 {
    double a1, b1, c1;
    double a2, b2, c2;
};

/// Bivariate polynomial with a dense coefficient table,
/// coeff(m, n) * v1^m * v2^n. Values are immutable after construction;
/// all operations are pure and safe to share across threads.
///
/// Coefficients with magnitude below 1e-300 are trimmed to zero so the
/// declared degrees stay consistent with the table.
class BiPoly {
public:
    BiPoly() : deg1_(0), deg2_(0), c_(1, 0.0) {}
    static BiPoly constant(double v);
    static BiPoly monomial(int m, int n, double v);
    /// Lift a univariate polynomial into the plane; var selects v1 or v2.
    static BiPoly from_univariate(const Poly1& p, int var);

    int deg1() const { return deg1_; }
    int deg2() const { return deg2_; }
    double coeff(int m, int n) const;
    bool is_zero() const;
    double max_abs_coeff() const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(double s) const;

    /// Exact partial derivative; var is 1 or 2.
    BiPoly diff(int var) const;
    /// Antiderivative with zero constant: q(X,.) = integral_0^X p(t,.) dt
    /// for var 1 (analogously for var 2).
    BiPoly cumint(int var) const;
    /// Substitute both variables by affine forms of (x, y) and expand.
    BiPoly affine(const AffineMap2& map) const;

    /// Horner evaluation at (x, y).
    double eval(double x, double y) const;
    /// Restrict to v1 = x0; result is a polynomial in v2.
    Poly1 at_v1(double x0) const;
    /// Restrict to v2 = y0; result is a polynomial in v1.
    Poly1 at_v2(double y0) const;
    /// Substitute v2 = v1; result is a polynomial in the shared variable.
    Poly1 diagonal() const;

private:
    int deg1_, deg2_;
    std::vector<double> c_;  // row-major, stride deg2_+1

    BiPoly(int d1, int d2) : deg1_(d1), deg2_(d2), c_((d1 + 1) * (d2 + 1), 0.0) {}
    double& at(int m, int n) { return c_[m * (deg2_ + 1) + n]; }
    double at(int m, int n) const { return c_[m * (deg2_ + 1) + n]; }
    void trim();
};

std::ostream& operator<<(std::ostream& os, const Poly1& p);
std::ostream& operator<<(std::ostream& os, const BiPoly& p);

}  // namespace kdv
