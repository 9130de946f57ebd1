// ellu: the 5x5 period matrix of the depth-one elliptic polylogarithm bundle,
// its lattice monodromy, and the associated unipotent group.
//
// For z = -r2*tau + r1 away from the lattice, the fundamental solution is the
// unit lower triangular matrix
//
//         [  1                                        ]
//         [  0     1                                  ]
//   P  =  [ -r2    r1                1                ]
//         [ p41   p42               -r1    1          ]
//         [ p51   p52               -r2    0    1     ]
//
//   p41 = Li01 - r1/2              p42 = -r1^2/2 - 1/12
//   p51 =  r2^2/2 + 1/12           p52 = Li01 - r1*r2 - r1/2 + 1/4
//
// with Li01 the series from siegel.hpp.  Continuing P around a lattice
// translation z -> z + m + n*tau multiplies it on the right by a constant
// rational matrix P^{-1} * P~, computed here by numerical continuation and
// recognized exactly.
//
// The relevant Lie algebra sits inside strictly lower triangular matrices:
// with c1 = E43, c2 = E53, d1 = E31, d2 = E32 and the corner entries E41,
// E42, E51, E52, the subalgebra w is spanned by c1 - d2, c2 + d1 and the four
// corners.  For a unipotent U = I + B supported on the eight admissible
// entries (rows 3..5, columns 1..3 below the diagonal), B^3 = 0 and
// log U = B - B^2/2 changes only corner entries, so
//
//   U in exp(w)  <=>  B31 = B53  and  B32 = -B43.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <type_traits>

#include "rational.hpp"
#include "siegel.hpp"

namespace ellu {

template <class T>
struct Mat5 {
    std::array<std::array<T, 5>, 5> a{};

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const T& operator()(int i, int j) const
    {
        return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    static Mat5 identity()
    {
        Mat5 m;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) m(i, j) = T(i == j ? 1 : 0);
        }
        return m;
    }

    static Mat5 zero()
    {
        Mat5 m;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) m(i, j) = T(0);
        }
        return m;
    }

    // Elementary matrix E_ij (1-based indices, matching the display above).
    static Mat5 elementary(int i, int j)
    {
        Mat5 m = zero();
        m(i - 1, j - 1) = T(1);
        return m;
    }

    friend Mat5 operator*(const Mat5& x, const Mat5& y)
    {
        Mat5 r = zero();
        for (int i = 0; i < 5; ++i) {
            for (int k = 0; k < 5; ++k) {
                if (x(i, k) == T(0)) continue;
                for (int j = 0; j < 5; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        }
        return r;
    }

    friend Mat5 operator+(const Mat5& x, const Mat5& y)
    {
        Mat5 r;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) r(i, j) = x(i, j) + y(i, j);
        }
        return r;
    }

    friend Mat5 operator-(const Mat5& x, const Mat5& y)
    {
        Mat5 r;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) r(i, j) = x(i, j) - y(i, j);
        }
        return r;
    }

    Mat5 scaled(const T& c) const
    {
        Mat5 r = *this;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) r(i, j) *= c;
        }
        return r;
    }

    friend bool operator==(const Mat5& x, const Mat5& y) { return x.a == y.a; }
    friend bool operator!=(const Mat5& x, const Mat5& y) { return !(x == y); }
};

using Mat5d = Mat5<double>;
using Mat5q = Mat5<Rational>;

template <class T>
Mat5<T> lie_bracket(const Mat5<T>& x, const Mat5<T>& y)
{
    return x * y - y * x;
}

// Gauss-Jordan inverse.  With exact scalars any nonzero pivot works; with
// doubles, partial pivoting keeps the elimination stable.
template <class T>
Mat5<T> inverse(const Mat5<T>& m)
{
    Mat5<T> a = m;
    Mat5<T> inv = Mat5<T>::identity();
    for (int col = 0; col < 5; ++col) {
        int piv = -1;
        if constexpr (std::is_same_v<T, double>) {
            double best = 0.0;
            for (int i = col; i < 5; ++i) {
                if (std::abs(a(i, col)) > best) {
                    best = std::abs(a(i, col));
                    piv = i;
                }
            }
        } else {
            for (int i = col; i < 5; ++i) {
                if (a(i, col) != T(0)) {
                    piv = i;
                    break;
                }
            }
        }
        if (piv < 0) throw std::domain_error("matrix is singular");
        std::swap(a.a[static_cast<std::size_t>(piv)], a.a[static_cast<std::size_t>(col)]);
        std::swap(inv.a[static_cast<std::size_t>(piv)], inv.a[static_cast<std::size_t>(col)]);
        const T d = a(col, col);
        for (int j = 0; j < 5; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int i = 0; i < 5; ++i) {
            if (i == col) continue;
            const T f = a(i, col);
            if (f == T(0)) continue;
            for (int j = 0; j < 5; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <class T>
T determinant(Mat5<T> a)
{
    T det(1);
    for (int col = 0; col < 5; ++col) {
        int piv = -1;
        for (int i = col; i < 5; ++i) {
            if (a(i, col) != T(0)) {
                piv = i;
                break;
            }
        }
        if (piv < 0) return T(0);
        if (piv != col) {
            std::swap(a.a[static_cast<std::size_t>(piv)], a.a[static_cast<std::size_t>(col)]);
            det = -det;
        }
        det *= a(col, col);
        for (int i = col + 1; i < 5; ++i) {
            const T f = a(i, col) / a(col, col);
            if (f == T(0)) continue;
            for (int j = col; j < 5; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

inline double max_abs_diff(const Mat5d& x, const Mat5d& y)
{
    double m = 0.0;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
    }
    return m;
}

inline Mat5d to_double(const Mat5q& m)
{
    Mat5d r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) r(i, j) = to_double(m(i, j));
    }
    return r;
}

// Entry-wise rational recognition with bounded denominator.
inline std::optional<Mat5q> recognize_matrix(const Mat5d& m, long max_den = 24, double tol = 1e-8)
{
    Mat5q r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            auto val = recognize_rational(m(i, j), max_den, tol);
            if (!val) return std::nullopt;
            r(i, j) = *val;
        }
    }
    return r;
}

// ----------------------------------------------------------------------------
// Period matrix.

// Builds the 5x5 matrix displayed at the top of this header.  The scalar is
// Complex because the Li01 entries are genuinely complex.
inline Mat5<Complex> period_matrix_entries(Complex li01_value, double r1, double r2)
{
    Mat5<Complex> p = Mat5<Complex>::identity();
    p(2, 0) = -r2;
    p(2, 1) = r1;
    p(3, 0) = li01_value - r1 / 2.0;
    p(3, 1) = -r1 * r1 / 2.0 - 1.0 / 12.0;
    p(3, 2) = -r1;
    p(4, 0) = r2 * r2 / 2.0 + 1.0 / 12.0;
    p(4, 1) = li01_value - r1 * r2 - r1 / 2.0 + 0.25;
    p(4, 2) = -r2;
    return p;
}

// Period matrix of the public determination at z.
inline Mat5<Complex> period_matrix(const TorusPoint& p, const SiegelConfig& cfg = {})
{
    return period_matrix_entries(li01(p, cfg), p.r1, p.r2);
}

// Ratio P(z)^{-1} * P~(z + m + n*tau) where P~ carries the entries continued
// along the straight path.  The result is a constant matrix with rational
// entries (independent of z); callers recognize it exactly.  Because the
// ratio is constant it is computed at the reduced representative, where the
// public determination agrees branch by branch with the start of the
// continuation.
inline Mat5<Complex> monodromy_ratio(const TorusPoint& p, long m, long n, const SiegelConfig& cfg = {})
{
    const TorusPoint base = reduce_to_fundamental(p).point;
    const Complex li_start = li01(base, cfg);
    const Complex li_end = li01_continuation(base, m, n, cfg);
    const Mat5<Complex> P = period_matrix_entries(li_start, base.r1, base.r2);
    const Mat5<Complex> Pend = period_matrix_entries(
        li_end, base.r1 + static_cast<double>(m), base.r2 - static_cast<double>(n));
    return inverse(P) * Pend;
}

inline Mat5d real_part(const Mat5<Complex>& m)
{
    Mat5d r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) r(i, j) = m(i, j).real();
    }
    return r;
}

inline double max_abs_imag(const Mat5<Complex>& m)
{
    double w = 0.0;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) w = std::max(w, std::abs(m(i, j).imag()));
    }
    return w;
}

// The two lattice-translation monodromy matrices, exactly.
inline Mat5q lattice_monodromy_x()
{
    Mat5q u = Mat5q::identity();
    u(2, 1) = 1;
    u(3, 0) = Rational(-1, 2);
    u(3, 1) = Rational(-1, 2);
    u(3, 2) = -1;
    u(4, 1) = Rational(-1, 2);
    return u;
}

inline Mat5q lattice_monodromy_tau()
{
    Mat5q u = Mat5q::identity();
    u(2, 0) = 1;
    u(3, 0) = Rational(1, 2);
    u(4, 0) = Rational(1, 2);
    u(4, 1) = Rational(1, 2);
    u(4, 2) = 1;
    return u;
}

// ----------------------------------------------------------------------------
// The unipotent group and its Lie algebra.

inline Mat5q lie_c1() { return Mat5q::elementary(4, 3); }
inline Mat5q lie_c2() { return Mat5q::elementary(5, 3); }
inline Mat5q lie_d1() { return Mat5q::elementary(3, 1); }
inline Mat5q lie_d2() { return Mat5q::elementary(3, 2); }

// Admissible strictly-lower support: rows 3..5 against columns 1..3, below
// the diagonal (eight entries).
inline bool has_admissible_support(const Mat5q& b)
{
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (b(i, j) == 0) continue;
            const bool ok = (i >= 2 && j <= 2 && i > j) && !(i == 2 && j == 2);
            if (!ok) return false;
        }
    }
    return true;
}

inline bool is_unipotent_admissible(const Mat5q& u)
{
    Mat5q b = u - Mat5q::identity();
    return has_admissible_support(b);
}

// Exact log of a unipotent matrix (N = U - I nilpotent, N^5 = 0).
inline Mat5q unipotent_log(const Mat5q& u)
{
    const Mat5q n = u - Mat5q::identity();
    Mat5q power = n;
    Mat5q acc = n;
    for (int k = 2; k <= 4; ++k) {
        power = power * n;
        acc = acc + power.scaled(Rational((k % 2 == 0) ? -1 : 1, k));
    }
    return acc;
}

// Exact exp of a nilpotent matrix.
inline Mat5q nilpotent_exp(const Mat5q& x)
{
    Mat5q acc = Mat5q::identity();
    Mat5q power = Mat5q::identity();
    BigInt fact = 1;
    for (int k = 1; k <= 4; ++k) {
        power = power * x;
        fact *= k;
        acc = acc + power.scaled(Rational(1, fact));
    }
    return acc;
}

// Membership of a nilpotent X in the subalgebra w.
inline bool in_lie_w(const Mat5q& x)
{
    if (!has_admissible_support(x)) return false;
    return x(2, 0) == x(4, 2) && x(2, 1) == -x(3, 2);
}

// Membership of a unipotent U in the group exp(w).
inline bool in_group_w(const Mat5q& u)
{
    if (!is_unipotent_admissible(u)) return false;
    return in_lie_w(unipotent_log(u));
}

// ----------------------------------------------------------------------------
// Determinations.

// A determination of the bundle is P' = P * U for a constant U in exp(w).
// Its provenance data are read off the constant matrix:
//   u1 = U32, u2 = -U31, x = U41, y = U52,
// and the distinguished entries transform as
//   p'32 = r1 + u1,   -p'31 = r2 + u2,
//   p'41 = p41 + u2*r1 + x,   p'52 = p52 - u1*r2 + y.
struct DeterminationTag {
    Rational u1;
    Rational u2;
    Rational x;
    Rational y;
};

inline DeterminationTag determination_tag(const Mat5q& u)
{
    if (!in_group_w(u)) throw std::invalid_argument("determination matrix must lie in exp(w)");
    return DeterminationTag{u(2, 1), -u(2, 0), u(3, 0), u(4, 1)};
}

inline Mat5<Complex> to_complex_matrix(const Mat5q& m)
{
    Mat5<Complex> r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) r(i, j) = Complex(to_double(m(i, j)), 0.0);
    }
    return r;
}

inline Mat5<Complex> make_determination(const Mat5<Complex>& p, const Mat5q& u)
{
    return p * to_complex_matrix(u);
}

// A period matrix together with its evaluation point and the exact branch
// tag: entries = (canonical matrix at point) * determination_tag.
struct PeriodMatrix {
    Mat5<Complex> entries;
    TorusPoint point;
    Mat5q determination_tag;
};

inline PeriodMatrix period_matrix_at(const TorusPoint& p, const SiegelConfig& cfg = {})
{
    return PeriodMatrix{period_matrix(p, cfg), p, Mat5q::identity()};
}

// The data of a generalized determination P' = P * U: the shifted real
// functions R1, R2, the distinguished entries P41, P52, and the provenance
// (U itself plus its shift parameters).
struct GeneralizedDetermination {
    Complex R1;
    Complex R2;
    Complex P41;
    Complex P52;
    Mat5q provenance;
    DeterminationTag shifts;
};

inline GeneralizedDetermination make_generalized_determination(const PeriodMatrix& p,
                                                               const Mat5q& u)
{
    const DeterminationTag tag = determination_tag(u);  // validates membership
    const Mat5<Complex> e = make_determination(p.entries, u);
    return GeneralizedDetermination{e(2, 1), -e(2, 0), e(3, 0), e(4, 1),
                                    p.determination_tag * u, tag};
}

// ----------------------------------------------------------------------------
// The canonical root attached to the public determination.
//
// At reduced z (r1 in [0,1), r2 in (-1,0]) with all logarithms principal,
//   exp(-pi*i*(p41 + p52)) * Si(z,tau) = exp(3*pi*i/4)
// exactly; and |exp(-pi*i*(p41 + p52))| = 1/|Si| holds at every z because
// p41 + p52 differs from the reduced value by real quantities only.
inline Complex siegel_determination_root(const TorusPoint& p, const SiegelConfig& cfg = {})
{
    const Mat5<Complex> P = period_matrix(p, cfg);
    const Complex s = p.is_reduced() ? siegel_direct(p, cfg) : siegel(p, cfg);
    return std::exp(Complex(0.0, -pi) * (P(3, 0) + P(4, 1))) * s;
}

}  // namespace ellu
