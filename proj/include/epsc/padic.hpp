#pragma once

// Exact truncated arithmetic in F = Q_p and a quadratic extension K.
//
// F-elements are stored as mant * p^val with mant a unit mod p^(prec-val);
// prec is the absolute precision: the element is known modulo p^prec.
// Operations compute the precision they can justify and throw
// precision_error instead of returning unjustified digits.
//
// K-elements are coordinate pairs a + b*g over the basis {1, g}, where g
// satisfies g^2 = A*g + B with integer A, B fixed by the extension catalog.
// Ramified: g = pi_K (and {1, pi_K} is an O_F-basis of O_K).
// Unramified: g is a lifted residue generator.

#include <memory>
#include <string>
#include <vector>

#include "epsc/common.hpp"

namespace epsc {

class FElem {
public:
    FElem() : p_(2), mant_(0), val_(0), prec_(0) {}
    /// integer constant, known mod p^prec
    static FElem from_int(i64 p, i64 value, int prec);
    /// num/den with den prime to p allowed to carry p-powers; exact up to prec
    static FElem from_rat(i64 p, i64 num, i64 den, int prec);
    static FElem zero(i64 p, int prec) { return from_int(p, 0, prec); }

    i64 p() const { return p_; }
    bool is_zero() const { return mant_ == 0; }           // zero to tracked precision
    int valuation() const;                                 // throws if zero to precision
    int precision() const { return prec_; }

    FElem operator+(const FElem& o) const;
    FElem operator-(const FElem& o) const { return *this + o.negated(); }
    FElem operator*(const FElem& o) const;
    FElem negated() const;
    FElem inverse() const;                                 // any nonzero (unit or shifted)
    FElem unit_inverse() const;                            // requires valuation 0
    FElem shifted(int k) const;                            // * p^k (exact)
    FElem pow(int k) const;

    /// residue of a unit modulo p^k (requires val == 0, prec >= k)
    i64 unit_residue(int k) const;
    /// p-adic fractional-part exponent lambda(x) in [0,1); requires prec >= 0
    Rat01 frac_exponent() const;

    bool congruent(const FElem& o, int prec) const;        // equal mod p^prec
    std::string str() const;

private:
    FElem(i64 p, i64 mant, int val, int prec) : p_(p), mant_(mant), val_(val), prec_(prec) {}
    void normalize();
    static int max_window(i64 p);

    i64 p_;
    i64 mant_;    // unit mantissa in [0, p^(prec-val)), or 0
    int val_;     // valuation; == prec_ when zero-to-precision
    int prec_;    // absolute precision exponent
};

struct Ext;

class KElem {
public:
    KElem() : ext_(nullptr) {}
    KElem(const Ext* e, FElem a, FElem b) : ext_(e), a_(std::move(a)), b_(std::move(b)) {}

    const Ext& ext() const { return *ext_; }
    const FElem& a() const { return a_; }
    const FElem& b() const { return b_; }
    bool in_base_field() const { return b_.is_zero(); }

    KElem operator+(const KElem& o) const;
    KElem operator-(const KElem& o) const;
    KElem operator*(const KElem& o) const;
    KElem negated() const;
    KElem conj() const;
    FElem trace() const;
    FElem norm() const;
    KElem inverse() const;                                 // conj / norm
    KElem unit_inverse() const;                            // requires v_K == 0
    KElem pow(int k) const;

    int vK() const;                                        // throws if zero to precision
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    int precisionK() const;                                // absolute precision in v_K units
    std::string str() const;

private:
    const Ext* ext_;
    FElem a_, b_;
};

enum class ExtKind { unramified, ramified };

/// Quadratic extension descriptor.  Immutable; obtained from Ext::make.
struct Ext {
    i64 p = 0;
    std::string tag;
    ExtKind kind = ExtKind::ramified;
    int d = 0;            // differential exponent
    int t = 0;            // v_F(2)
    int s = -1;           // Eisenstein exponent (d even), else -1
    i64 uprime = 0;       // Eisenstein unit u' (d even), else 0
    i64 A = 0, B = 0;     // minimal polynomial g^2 = A g + B
    i64 piF_int = 0;      // pi_F as an integer (p, u*p, -2, 6, ...)
    int base_prec = 0;    // default F-precision for constructed elements
    int n_psi0 = 0;       // conductor of psi_0 (computed by direct scan)
    i64 x0_num = 0, x0_den = 1;  // optional scaling of x0 (default 1)
    i64 x0_a = 0, x0_b = 1;      // x0 = (x0_a + x0_b * g) * x0_num/x0_den

    int e() const { return kind == ExtKind::ramified ? 2 : 1; }
    i64 qK() const { return kind == ExtKind::ramified ? p : p * p; }
    int fK() const { return kind == ExtKind::ramified ? 1 : 2; }

    /// Build and validate a catalog extension.  Supported tags:
    /// p odd: "unramified", "sqrt-pi", "sqrt-u-pi";
    /// p = 2: "unramified" (alias "sqrt(5)"), "sqrt(-1)", "sqrt(3)",
    ///        "sqrt(2)", "sqrt(-2)", "sqrt(6)", "sqrt(10)".
    /// x0_scale_num/den rescale x0 by a nonzero rational (census
    /// choice-independence checks); conductor of psi_0 is recomputed.
    static std::shared_ptr<const Ext> make(i64 p, const std::string& tag,
                                           i64 x0_scale_num = 1, i64 x0_scale_den = 1);

    // element constructors at default precision
    KElem from_coords(i64 a_num, i64 a_den, i64 b_num, i64 b_den) const;
    KElem from_int(i64 a, i64 b) const { return from_coords(a, 1, b, 1); }
    KElem piK() const { return piK_impl(); }
    KElem piF() const;
    KElem x0() const;
    KElem one() const { return from_int(1, 0); }
    FElem f_from_rat(i64 num, i64 den) const;

    /// psi: additive character of F, conductor 0; exponent of psi(x)
    static Rat01 psi_frac(const FElem& x);
    /// psi_0(x) = psi(tr(-x*x0/2)); exponent
    Rat01 psi0(const KElem& x) const;
    /// v_F on base-field values embedded in K (v_K = e * v_F there)
    int vF_of_base(const KElem& x) const;

    std::string describe() const;

private:
    KElem piK_impl() const;
    int scan_psi0_conductor(int bound) const;
    void validate() const;
};

/// catalog tags available for a given p
std::vector<std::string> catalog_tags(i64 p);

} // namespace epsc
