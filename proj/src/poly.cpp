#include "kdv/poly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace kdv {

namespace {
constexpr double kTrimThreshold = 1e-300;
}

// ---------------------------------------------------------------- Poly1

Poly1::Poly1(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.assign(1, 0.0);
    trim();
}

Poly1 Poly1::constant(double v) { return Poly1(std::vector<double>{v}); }

Poly1 Poly1::monomial(int m, double v) {
    std::vector<double> c(m + 1, 0.0);
    c[m] = v;
    return Poly1(std::move(c));
}

double Poly1::coeff(int m) const {
    return (m >= 0 && m < static_cast<int>(c_.size())) ? c_[m] : 0.0;
}

bool Poly1::is_zero() const { return c_.size() == 1 && c_[0] == 0.0; }

double Poly1::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double Poly1::eval(double x) const {
    double acc = 0.0;
    for (int m = degree(); m >= 0; --m) acc = acc * x + c_[m];
    return acc;
}

Poly1 Poly1::derivative() const {
    if (degree() == 0) return Poly1();
    std::vector<double> d(c_.size() - 1);
    for (int m = 1; m <= degree(); ++m) d[m - 1] = c_[m] * m;
    return Poly1(std::move(d));
}

Poly1 Poly1::antiderivative() const {
    std::vector<double> a(c_.size() + 1, 0.0);
    for (int m = 0; m <= degree(); ++m) a[m + 1] = c_[m] / (m + 1);
    return Poly1(std::move(a));
}

double Poly1::l2_norm_sq(double length) const {
    return ((*this) * (*this)).antiderivative().eval(length);
}

Poly1 Poly1::operator+(const Poly1& o) const {
    std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t m = 0; m < c_.size(); ++m) r[m] += c_[m];
    for (size_t m = 0; m < o.c_.size(); ++m) r[m] += o.c_[m];
    return Poly1(std::move(r));
}

Poly1 Poly1::operator-(const Poly1& o) const { return *this + o * (-1.0); }

Poly1 Poly1::operator*(const Poly1& o) const {
    std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
    for (size_t m = 0; m < c_.size(); ++m)
        for (size_t k = 0; k < o.c_.size(); ++k) r[m + k] += c_[m] * o.c_[k];
    return Poly1(std::move(r));
}

Poly1 Poly1::operator*(double s) const {
    std::vector<double> r(c_);
    for (double& v : r) v *= s;
    return Poly1(std::move(r));
}

void Poly1::trim() {
    for (double& v : c_)
        if (std::abs(v) < kTrimThreshold) v = 0.0;
    while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

// ---------------------------------------------------------------- BiPoly

BiPoly BiPoly::constant(double v) {
    BiPoly p(0, 0);
    p.at(0, 0) = v;
    p.trim();
    return p;
}

BiPoly BiPoly::monomial(int m, int n, double v) {
    if (m < 0 || n < 0) throw std::invalid_argument("BiPoly: negative exponent");
    BiPoly p(m, n);
    p.at(m, n) = v;
    p.trim();
    return p;
}

BiPoly BiPoly::from_univariate(const Poly1& p, int var) {
    if (var != 1 && var != 2) throw std::invalid_argument("BiPoly: var must be 1 or 2");
    const int d = p.degree();
    BiPoly q(var == 1 ? d : 0, var == 2 ? d : 0);
    for (int m = 0; m <= d; ++m) {
        if (var == 1)
            q.at(m, 0) = p.coeff(m);
        else
            q.at(0, m) = p.coeff(m);
    }
    q.trim();
    return q;
}

double BiPoly::coeff(int m, int n) const {
    if (m < 0 || n < 0 || m > deg1_ || n > deg2_) return 0.0;
    return at(m, n);
}

bool BiPoly::is_zero() const {
    for (double v : c_)
        if (v != 0.0) return false;
    return true;
}

double BiPoly::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r(std::max(deg1_, o.deg1_), std::max(deg2_, o.deg2_));
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 0; n <= deg2_; ++n) r.at(m, n) += at(m, n);
    for (int m = 0; m <= o.deg1_; ++m)
        for (int n = 0; n <= o.deg2_; ++n) r.at(m, n) += o.at(m, n);
    r.trim();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o * (-1.0); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r(deg1_ + o.deg1_, deg2_ + o.deg2_);
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 0; n <= deg2_; ++n) {
            const double cmn = at(m, n);
            if (cmn == 0.0) continue;
            for (int p = 0; p <= o.deg1_; ++p)
                for (int q = 0; q <= o.deg2_; ++q)
                    r.at(m + p, n + q) += cmn * o.at(p, q);
        }
    r.trim();
    return r;
}

BiPoly BiPoly::operator*(double s) const {
    BiPoly r = *this;
    for (double& v : r.c_) v *= s;
    r.trim();
    return r;
}

BiPoly BiPoly::diff(int var) const {
    if (var != 1 && var != 2) throw std::invalid_argument("BiPoly::diff: var must be 1 or 2");
    if (var == 1) {
        if (deg1_ == 0) return BiPoly();
        BiPoly r(deg1_ - 1, deg2_);
        for (int m = 1; m <= deg1_; ++m)
            for (int n = 0; n <= deg2_; ++n) r.at(m - 1, n) = at(m, n) * m;
        r.trim();
        return r;
    }
    if (deg2_ == 0) return BiPoly();
    BiPoly r(deg1_, deg2_ - 1);
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 1; n <= deg2_; ++n) r.at(m, n - 1) = at(m, n) * n;
    r.trim();
    return r;
}

BiPoly BiPoly::cumint(int var) const {
    if (var != 1 && var != 2) throw std::invalid_argument("BiPoly::cumint: var must be 1 or 2");
    if (is_zero()) return BiPoly();
    if (var == 1) {
        BiPoly r(deg1_ + 1, deg2_);
        for (int m = 0; m <= deg1_; ++m)
            for (int n = 0; n <= deg2_; ++n) r.at(m + 1, n) = at(m, n) / (m + 1);
        r.trim();
        return r;
    }
    BiPoly r(deg1_, deg2_ + 1);
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 0; n <= deg2_; ++n) r.at(m, n + 1) = at(m, n) / (n + 1);
    r.trim();
    return r;
}

BiPoly BiPoly::affine(const AffineMap2& map) const {
    const BiPoly l1 = BiPoly::monomial(1, 0, map.a1) + BiPoly::monomial(0, 1, map.b1) +
                      BiPoly::constant(map.c1);
    const BiPoly l2 = BiPoly::monomial(1, 0, map.a2) + BiPoly::monomial(0, 1, map.b2) +
                      BiPoly::constant(map.c2);

    std::vector<BiPoly> pow1(deg1_ + 1), pow2(deg2_ + 1);
    pow1[0] = BiPoly::constant(1.0);
    for (int m = 1; m <= deg1_; ++m) pow1[m] = pow1[m - 1] * l1;
    pow2[0] = BiPoly::constant(1.0);
    for (int n = 1; n <= deg2_; ++n) pow2[n] = pow2[n - 1] * l2;

    BiPoly r;
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 0; n <= deg2_; ++n) {
            const double cmn = at(m, n);
            if (cmn == 0.0) continue;
            r = r + pow1[m] * pow2[n] * cmn;
        }
    return r;
}

double BiPoly::eval(double x, double y) const {
    double acc = 0.0;
    for (int m = deg1_; m >= 0; --m) {
        double row = 0.0;
        for (int n = deg2_; n >= 0; --n) row = row * y + at(m, n);
        acc = acc * x + row;
    }
    return acc;
}

Poly1 BiPoly::at_v1(double x0) const {
    std::vector<double> q(deg2_ + 1, 0.0);
    for (int n = 0; n <= deg2_; ++n) {
        double acc = 0.0;
        for (int m = deg1_; m >= 0; --m) acc = acc * x0 + at(m, n);
        q[n] = acc;
    }
    return Poly1(std::move(q));
}

Poly1 BiPoly::at_v2(double y0) const {
    std::vector<double> q(deg1_ + 1, 0.0);
    for (int m = 0; m <= deg1_; ++m) {
        double acc = 0.0;
        for (int n = deg2_; n >= 0; --n) acc = acc * y0 + at(m, n);
        q[m] = acc;
    }
    return Poly1(std::move(q));
}

Poly1 BiPoly::diagonal() const {
    std::vector<double> q(deg1_ + deg2_ + 1, 0.0);
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 0; n <= deg2_; ++n) q[m + n] += at(m, n);
    return Poly1(std::move(q));
}

void BiPoly::trim() {
    for (double& v : c_)
        if (std::abs(v) < kTrimThreshold) v = 0.0;
    int d1 = 0, d2 = 0;
    for (int m = 0; m <= deg1_; ++m)
        for (int n = 0; n <= deg2_; ++n)
            if (at(m, n) != 0.0) {
                d1 = std::max(d1, m);
                d2 = std::max(d2, n);
            }
    if (d1 == deg1_ && d2 == deg2_) return;
    BiPoly r(d1, d2);
    for (int m = 0; m <= d1; ++m)
        for (int n = 0; n <= d2; ++n) r.at(m, n) = at(m, n);
    *this = r;
}

std::ostream& operator<<(std::ostream& os, const Poly1& p) {
    bool first = true;
    for (int m = 0; m <= p.degree(); ++m) {
        if (p.coeff(m) == 0.0 && !(m == 0 && p.is_zero())) continue;
        if (!first) os << " + ";
        os << p.coeff(m) << "*x^" << m;
        first = false;
    }
    return os;
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
    bool first = true;
    for (int m = 0; m <= p.deg1(); ++m)
        for (int n = 0; n <= p.deg2(); ++n) {
            if (p.coeff(m, n) == 0.0) continue;
            if (!first) os << " + ";
            os << p.coeff(m, n) << "*v1^" << m << "*v2^" << n;
            first = false;
        }
    if (first) os << "0";
    return os;
}

}  // namespace kdv
