#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace zetabound {

// Double-double value: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Roughly 32 significant decimal digits.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace detail {

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    double e = b - (s - a);
    return DD(s, e);
}

inline DD two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    double e = (a - (s - v)) + (b - v);
    return DD(s, e);
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return DD(p, e);
}

} // namespace detail

inline DD renorm(double hi, double lo) {
    return detail::quick_two_sum(hi, lo);
}

inline DD operator+(DD a, DD b) {
    DD s = detail::two_sum(a.hi, b.hi);
    DD t = detail::two_sum(a.lo, b.lo);
    double lo = s.lo + t.hi;
    DD r = detail::quick_two_sum(s.hi, lo);
    lo = r.lo + t.lo;
    return detail::quick_two_sum(r.hi, lo);
}

inline DD operator+(DD a, double b) {
    DD s = detail::two_sum(a.hi, b);
    double lo = s.lo + a.lo;
    return detail::quick_two_sum(s.hi, lo);
}

inline DD operator+(double a, DD b) { return b + a; }

inline DD operator-(DD a) { return DD(-a.hi, -a.lo); }

inline DD operator-(DD a, DD b) { return a + (-b); }
inline DD operator-(DD a, double b) { return a + (-b); }
inline DD operator-(double a, DD b) { return (-b) + a; }

inline DD operator*(DD a, DD b) {
    DD p = detail::two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, lo);
}

inline DD operator*(DD a, double b) {
    DD p = detail::two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return detail::quick_two_sum(p.hi, lo);
}

inline DD operator*(double a, DD b) { return b * a; }

inline DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    DD q = detail::quick_two_sum(q1, q2);
    return q + q3;
}

inline DD operator/(DD a, double b) { return a / DD(b); }
inline DD operator/(double a, DD b) { return DD(a) / b; }

inline DD& operator+=(DD& a, DD b) { a = a + b; return a; }
inline DD& operator+=(DD& a, double b) { a = a + b; return a; }
inline DD& operator-=(DD& a, DD b) { a = a - b; return a; }
inline DD& operator-=(DD& a, double b) { a = a - b; return a; }
inline DD& operator*=(DD& a, DD b) { a = a * b; return a; }
inline DD& operator*=(DD& a, double b) { a = a * b; return a; }
inline DD& operator/=(DD& a, DD b) { a = a / b; return a; }
inline DD& operator/=(DD& a, double b) { a = a / b; return a; }

inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(DD a, DD b) { return !(a == b); }
inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }

inline bool operator<(DD a, double b) { return a < DD(b); }
inline bool operator>(DD a, double b) { return a > DD(b); }
inline bool operator<=(DD a, double b) { return a <= DD(b); }
inline bool operator>=(DD a, double b) { return a >= DD(b); }
inline bool operator<(double a, DD b) { return DD(a) < b; }
inline bool operator>(double a, DD b) { return DD(a) > b; }

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

// Exact scaling by a power of two.
inline DD mul_pwr2(DD a, double p) { return DD(a.hi * p, a.lo * p); }

inline bool dd_isfinite(DD a) { return std::isfinite(a.hi) && std::isfinite(a.lo); }

// pi and log 2 as exact double pairs.
inline constexpr DD dd_pi{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53};
inline constexpr DD dd_two_pi{0x1.921fb54442d18p+2, 0x1.1a62633145c07p-52};
inline constexpr DD dd_ln2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};

inline DD dd_sqr(DD a) {
    DD p = detail::two_prod(a.hi, a.hi);
    double lo = p.lo + 2.0 * a.hi * a.lo;
    return detail::quick_two_sum(p.hi, lo);
}

inline DD dd_sqrt(DD a) {
    if (a.hi < 0.0)
        throw std::domain_error("dd_sqrt: negative argument");
    if (a.hi == 0.0)
        return DD(0.0);
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    return DD(ax) + (a - dd_sqr(DD(ax))) * (x * 0.5);
}

inline DD dd_cbrt(DD a) {
    if (a.hi == 0.0)
        return DD(0.0);
    DD x(std::cbrt(a.hi));
    for (int i = 0; i < 2; ++i) {
        DD x3 = dd_sqr(x) * x;
        x = x - x * ((x3 - a) / (mul_pwr2(x3, 2.0) + a));
    }
    return x;
}

inline DD dd_floor(DD a) {
    double fh = std::floor(a.hi);
    if (fh != a.hi)
        return DD(fh);
    return renorm(fh, std::floor(a.lo));
}

inline DD dd_ceil(DD a) {
    double ch = std::ceil(a.hi);
    if (ch != a.hi)
        return DD(ch);
    return renorm(ch, std::ceil(a.lo));
}

inline DD dd_nint(DD a) { return dd_floor(a + 0.5); }

// Fractional part in [0, 1).
inline DD dd_frac(DD a) {
    DD f = a - dd_floor(a);
    if (f.hi >= 1.0)
        f = f - 1.0;
    if (f.hi < 0.0)
        f = f + 1.0;
    return f;
}

inline DD dd_exp(DD a) {
    if (a.hi > 709.0)
        return DD(std::numeric_limits<double>::infinity());
    if (a.hi < -709.0)
        return DD(0.0);
    double k = std::round(a.hi / dd_ln2.hi);
    DD r = a - dd_ln2 * k;
    // e^r with |r| <= 0.35: reduce by 2^9, Taylor, then square back.
    DD s = mul_pwr2(r, 1.0 / 512.0);
    DD term = s;
    DD sum = s;
    for (int i = 2; i <= 13; ++i) {
        term = term * s / static_cast<double>(i);
        sum += term;
        if (std::abs(term.hi) < 1e-35)
            break;
    }
    DD e = sum;                     // e^s - 1
    for (int i = 0; i < 9; ++i)
        e = mul_pwr2(e, 2.0) + dd_sqr(e);   // (1+e)^2 - 1 = 2e + e^2
    e = e + 1.0;
    return DD(std::ldexp(e.hi, static_cast<int>(k)), std::ldexp(e.lo, static_cast<int>(k)));
}

inline DD dd_log(DD a) {
    if (a.hi <= 0.0)
        throw std::domain_error("dd_log: non-positive argument");
    DD y = DD(std::log(a.hi));
    for (int i = 0; i < 2; ++i)
        y = y + a * dd_exp(-y) - 1.0;
    return y;
}

// log(1+x); series only for small x, where it beats the exp-based path.
inline DD dd_log1p(DD x) {
    double ax = std::abs(x.hi);
    if (ax >= 0.0625)
        return dd_log(x + 1.0);
    if (ax == 0.0)
        return DD(0.0);
    DD term = x;
    DD sum = x;
    DD mx = -x;
    for (int k = 2; k <= 40; ++k) {
        term = term * mx;
        sum += term / static_cast<double>(k);
        if (std::abs(term.hi) < 1e-36 * ax)
            break;
    }
    return sum;
}

inline DD dd_pow_int(DD a, long n) {
    if (n == 0)
        return DD(1.0);
    bool inv = n < 0;
    unsigned long e = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    DD base = a;
    DD acc(1.0);
    while (e) {
        if (e & 1)
            acc = acc * base;
        base = dd_sqr(base);
        e >>= 1;
    }
    return inv ? DD(1.0) / acc : acc;
}

inline DD dd_pow(DD a, DD b) {
    if (a.hi <= 0.0)
        throw std::domain_error("dd_pow: non-positive base");
    return dd_exp(b * dd_log(a));
}

inline DD dd_asinh(DD x) {
    return dd_log(x + dd_sqrt(dd_sqr(x) + 1.0));
}

// Parse a decimal literal ("-2.879660402e-1") into a DD.
inline DD dd_from_string(const std::string& s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto fail = [&]() -> void { throw std::invalid_argument("dd_from_string: bad literal '" + s + "'"); };
    if (n == 0)
        fail();
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    DD mant(0.0);
    long frac_digits = 0;
    bool seen_digit = false;
    bool in_frac = false;
    for (; i < n; ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            mant = mant * 10.0 + static_cast<double>(c - '0');
            if (in_frac)
                ++frac_digits;
            seen_digit = true;
        } else if (c == '.') {
            if (in_frac)
                fail();
            in_frac = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            fail();
        }
    }
    if (!seen_digit)
        fail();
    long expo = 0;
    if (i < n) {
        ++i;  // past 'e'
        if (i >= n)
            fail();
        bool eneg = false;
        if (s[i] == '+' || s[i] == '-') {
            eneg = s[i] == '-';
            ++i;
        }
        if (i >= n)
            fail();
        for (; i < n; ++i) {
            if (s[i] < '0' || s[i] > '9')
                fail();
            expo = expo * 10 + (s[i] - '0');
        }
        if (eneg)
            expo = -expo;
    }
    DD v = mant * dd_pow_int(DD(10.0), expo - frac_digits);
    return neg ? -v : v;
}

// Fixed-point-free scientific rendering with the requested significant digits.
inline std::string dd_to_string(DD a, int digits = 31) {
    if (a.hi == 0.0 && a.lo == 0.0)
        return "0";
    std::string out;
    DD x = a;
    if (x.hi < 0.0) {
        out += '-';
        x = -x;
    }
    int e10 = static_cast<int>(std::floor(std::log10(x.hi)));
    x = x * dd_pow_int(DD(10.0), -static_cast<long>(e10));
    if (x.hi >= 10.0) {
        x = x / 10.0;
        ++e10;
    } else if (x.hi < 1.0) {
        x = x * 10.0;
        --e10;
    }
    std::string ds;
    for (int k = 0; k < digits + 1; ++k) {
        double d = std::floor(x.hi);
        if (d < 0.0)
            d = 0.0;
        if (d > 9.0)
            d = 9.0;
        ds += static_cast<char>('0' + static_cast<int>(d));
        x = (x - d) * 10.0;
    }
    // round the guard digit
    if (ds.back() >= '5') {
        int k = static_cast<int>(ds.size()) - 2;
        while (k >= 0) {
            if (ds[k] != '9') {
                ++ds[k];
                break;
            }
            ds[k] = '0';
            --k;
        }
        if (k < 0) {
            ds.insert(ds.begin(), '1');
            ++e10;
        }
    }
    ds.resize(static_cast<std::size_t>(digits));
    out += ds[0];
    out += '.';
    out.append(ds.begin() + 1, ds.end());
    out += 'e';
    out += e10 < 0 ? '-' : '+';
    int ae = std::abs(e10);
    std::string es = std::to_string(ae);
    if (es.size() < 2)
        es.insert(es.begin(), '0');
    out += es;
    return out;
}

} // namespace zetabound
