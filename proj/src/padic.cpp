#include "epsc/padic.hpp"

#include <algorithm>
#include <sstream>

namespace epsc {

namespace {

i64 pow_checked(i64 p, int e) { return ipow(p, e); }

/// extended euclid inverse of a mod m (m a prime power, gcd(a,m)=1)
i64 inv_mod(i64 a, i64 m) {
    i64 t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw domain_error("inv_mod: not invertible");
    return t < 0 ? t + m : t;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return i64((__int128)a * b % m);
}

} // namespace

int FElem::max_window(i64 p) {
    switch (p) {
        case 2: return 60;
        case 3: return 38;
        case 5: return 26;
        default: {
            int w = 0;
            i64 v = 1;
            while (v <= (i64(1) << 61) / p) { v *= p; ++w; }
            return w;
        }
    }
}

void FElem::normalize() {
    if (prec_ <= val_) { // no justified digits at all
        throw precision_error("FElem: precision exhausted (no correct digit)");
    }
    i64 pw = pow_checked(p_, prec_ - val_);
    mant_ %= pw;
    if (mant_ < 0) mant_ += pw;
    while (mant_ != 0 && mant_ % p_ == 0) {
        mant_ /= p_;
        ++val_;
    }
    if (mant_ == 0) val_ = prec_;
}

FElem FElem::from_int(i64 p, i64 value, int prec) {
    return from_rat(p, value, 1, prec);
}

FElem FElem::from_rat(i64 p, i64 num, i64 den, int prec) {
    if (den == 0) throw domain_error("FElem: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    int v = 0;
    while (num != 0 && num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    if (num == 0) return FElem(p, 0, prec, prec);
    if (prec <= v) throw precision_error("FElem::from_rat: precision below valuation");
    int w = prec - v;
    if (w > max_window(p)) throw precision_error("FElem: window exceeds int64 policy");
    i64 pw = pow_checked(p, w);
    i64 m = num % pw;
    if (m < 0) m += pw;
    if (den != 1) m = mulmod(m, inv_mod(den % pw, pw), pw);
    FElem r(p, m, v, prec);
    r.normalize();
    return r;
}

int FElem::valuation() const {
    if (mant_ == 0) throw precision_error("valuation of zero-to-precision element");
    return val_;
}

FElem FElem::operator+(const FElem& o) const {
    if (p_ != o.p_) throw domain_error("FElem: mixed primes");
    int prec = std::min(prec_, o.prec_);
    if (mant_ == 0 && o.mant_ == 0) return FElem(p_, 0, prec, prec);
    int v = std::min(mant_ == 0 ? prec : val_, o.mant_ == 0 ? prec : o.val_);
    v = std::min(v, prec);
    if (prec <= v) return FElem(p_, 0, prec, prec);
    int w = prec - v;
    if (w > max_window(p_)) throw precision_error("FElem+: window exceeds int64 policy");
    i64 pw = pow_checked(p_, w);
    i64 m = 0;
    if (mant_ != 0 && val_ < prec) m += mulmod(mant_ % pw, pow_checked(p_, val_ - v) % pw, pw);
    if (o.mant_ != 0 && o.val_ < prec) m = (m + mulmod(o.mant_ % pw, pow_checked(p_, o.val_ - v) % pw, pw)) % pw;
    FElem r(p_, m, v, prec);
    r.normalize();
    return r;
}

FElem FElem::negated() const {
    if (mant_ == 0) return *this;
    i64 pw = pow_checked(p_, prec_ - val_);
    return FElem(p_, (pw - mant_) % pw, val_, prec_);
}

FElem FElem::operator*(const FElem& o) const {
    if (p_ != o.p_) throw domain_error("FElem: mixed primes");
    if (mant_ == 0 || o.mant_ == 0) {
        // 0 * x known mod p^(prec_zero + v_other); if both zero, sum of precs
        int prec;
        if (mant_ == 0 && o.mant_ == 0) prec = prec_ + o.prec_;
        else if (mant_ == 0) prec = prec_ + o.val_;
        else prec = o.prec_ + val_;
        return FElem(p_, 0, prec, prec);
    }
    int v = val_ + o.val_;
    int prec = std::min(prec_ + o.val_, o.prec_ + val_);
    int w = prec - v;
    if (w > max_window(p_)) throw precision_error("FElem*: window exceeds int64 policy");
    i64 pw = pow_checked(p_, w);
    FElem r(p_, mulmod(mant_ % pw, o.mant_ % pw, pw), v, prec);
    r.normalize();
    return r;
}

FElem FElem::unit_inverse() const {
    if (mant_ == 0) throw domain_error("unit_inverse of zero");
    if (val_ != 0) throw domain_error("unit_inverse: not a unit");
    return inverse();
}

FElem FElem::inverse() const {
    if (mant_ == 0) throw domain_error("inverse of zero-to-precision element");
    // x = m p^v (1 + O(p^(prec-v)));  1/x known mod p^(prec - 2v)
    int w = prec_ - val_;
    int prec = prec_ - 2 * val_;
    i64 pw = pow_checked(p_, w);
    FElem r(p_, inv_mod(mant_, pw), -val_, prec);
    r.normalize();
    return r;
}

FElem FElem::shifted(int k) const {
    if (mant_ == 0) return FElem(p_, 0, prec_ + k, prec_ + k);
    return FElem(p_, mant_, val_ + k, prec_ + k);
}

FElem FElem::pow(int k) const {
    if (k == 0) return from_int(p_, 1, prec_);
    FElem base = k > 0 ? *this : inverse();
    FElem r = base;
    for (int i = 1; i < (k > 0 ? k : -k); ++i) r = r * base;
    return r;
}

i64 FElem::unit_residue(int k) const {
    if (mant_ == 0 || val_ != 0) throw domain_error("unit_residue: not a unit");
    if (prec_ < k) throw precision_error("unit_residue: precision too low");
    return mant_ % pow_checked(p_, k);
}

Rat01 FElem::frac_exponent() const {
    if (prec_ < 0) throw precision_error("frac_exponent: negative digits unknown");
    if (mant_ == 0 || val_ >= 0) return Rat01(0, 1);
    i64 pw = pow_checked(p_, -val_);
    return Rat01(mant_ % pw, pw);
}

bool FElem::congruent(const FElem& o, int prec) const {
    if (prec_ < prec || o.prec_ < prec) throw precision_error("congruent: precision too low");
    FElem d = *this - o;
    return d.mant_ == 0 || d.val_ >= prec;
}

std::string FElem::str() const {
    std::ostringstream os;
    if (mant_ == 0) os << "O(" << p_ << "^" << prec_ << ")";
    else os << mant_ << "*" << p_ << "^" << val_ << "+O(" << p_ << "^" << prec_ << ")";
    return os.str();
}

// ---------------------------------------------------------------------------

KElem KElem::operator+(const KElem& o) const { return KElem(ext_, a_ + o.a_, b_ + o.b_); }
KElem KElem::operator-(const KElem& o) const { return KElem(ext_, a_ - o.a_, b_ - o.b_); }
KElem KElem::negated() const { return KElem(ext_, a_.negated(), b_.negated()); }

KElem KElem::operator*(const KElem& o) const {
    // (a + b g)(c + d g) = (ac + bd B) + (ad + bc + bd A) g
    const FElem& a = a_; const FElem& b = b_;
    const FElem& c = o.a_; const FElem& d = o.b_;
    FElem bd = b * d;
    int cp = std::max({a.precision(), b.precision(), c.precision(), d.precision()}) + 4;
    FElem A = FElem::from_int(a.p(), ext_->A, cp);
    FElem B = FElem::from_int(a.p(), ext_->B, cp);
    return KElem(ext_, a * c + bd * B, a * d + b * c + bd * A);
}

KElem KElem::conj() const {
    FElem A = FElem::from_int(a_.p(), ext_->A, std::max(a_.precision(), b_.precision()) + 4);
    return KElem(ext_, a_ + b_ * A, b_.negated());
}

FElem KElem::trace() const {
    FElem A = FElem::from_int(a_.p(), ext_->A, std::max(a_.precision(), b_.precision()) + 4);
    return a_ + a_ + b_ * A;
}

FElem KElem::norm() const {
    int hp = std::max(a_.precision(), b_.precision()) + 4;
    FElem A = FElem::from_int(a_.p(), ext_->A, hp);
    FElem B = FElem::from_int(a_.p(), ext_->B, hp);
    return a_ * a_ + A * a_ * b_ - B * b_ * b_;
}

KElem KElem::inverse() const {
    FElem n = norm();
    FElem ninv = n.inverse();
    KElem c = conj();
    return KElem(ext_, c.a_ * ninv, c.b_ * ninv);
}

KElem KElem::unit_inverse() const {
    if (vK() != 0) throw domain_error("unit_inverse: not a unit of K");
    return inverse();
}

KElem KElem::pow(int k) const {
    if (k == 0) return ext_->one();
    KElem base = k > 0 ? *this : inverse();
    KElem r = base;
    for (int i = 1; i < (k > 0 ? k : -k); ++i) r = r * base;
    return r;
}

int KElem::vK() const {
    bool ram = ext_->kind == ExtKind::ramified;
    if (a_.is_zero() && b_.is_zero()) throw precision_error("vK of zero-to-precision element");
    int best = 1 << 30;
    if (!a_.is_zero()) best = std::min(best, ram ? 2 * a_.valuation() : a_.valuation());
    if (!b_.is_zero()) best = std::min(best, ram ? 2 * b_.valuation() + 1 : b_.valuation());
    // a (or b) zero-to-precision must not hide smaller valuation
    int lim = precisionK();
    if (best >= lim) throw precision_error("vK: valuation beyond tracked precision");
    return best;
}

int KElem::precisionK() const {
    bool ram = ext_->kind == ExtKind::ramified;
    if (ram) return std::min(2 * a_.precision(), 2 * b_.precision() + 1);
    return std::min(a_.precision(), b_.precision());
}

std::string KElem::str() const {
    return "(" + a_.str() + ") + (" + b_.str() + ")*g";
}

// ---------------------------------------------------------------------------

namespace {

i64 least_nonresidue(i64 p) {
    for (i64 c = 2; c < p; ++c) {
        // Euler criterion
        i64 r = 1, b = c % p, e = (p - 1) / 2;
        while (e) { if (e & 1) r = r * b % p; b = b * b % p; e >>= 1; }
        if (r == p - 1) return c;
    }
    throw domain_error("no quadratic nonresidue found");
}

int default_prec(i64 p) {
    if (p == 2) return 34;
    if (p == 3) return 22;
    if (p == 5) return 15;
    return 12;
}

} // namespace

std::vector<std::string> catalog_tags(i64 p) {
    if (p == 2)
        return {"unramified", "sqrt(5)", "sqrt(-1)", "sqrt(3)", "sqrt(2)", "sqrt(-2)", "sqrt(6)", "sqrt(10)"};
    return {"unramified", "sqrt-pi", "sqrt-u-pi"};
}

std::shared_ptr<const Ext> Ext::make(i64 p, const std::string& tag, i64 sc_num, i64 sc_den) {
    bool prime = p >= 2;
    for (i64 q = 2; q * q <= p; ++q) if (p % q == 0) prime = false;
    if (!prime) throw domain_error("Ext::make: p not prime");
    if (sc_num == 0 || sc_den == 0) throw domain_error("Ext::make: zero x0 scale");

    auto E = std::make_shared<Ext>();
    E->p = p;
    E->tag = tag;
    E->t = (p == 2) ? 1 : 0;
    E->base_prec = default_prec(p);
    E->x0_num = sc_num; E->x0_den = sc_den;

    if (tag == "unramified" || (p == 2 && tag == "sqrt(5)")) {
        E->kind = ExtKind::unramified;
        E->d = 0;
        if (p == 2) { E->A = 1; E->B = 1; E->x0_a = -1; E->x0_b = 2; }   // g^2=g+1, x0 = 2g-1 = sqrt(5)
        else { E->A = 0; E->B = least_nonresidue(p); E->x0_a = 0; E->x0_b = 1; }
        E->piF_int = p;
    } else if (p != 2 && (tag == "sqrt-pi" || tag == "sqrt-u-pi")) {
        E->kind = ExtKind::ramified;
        E->d = 1;
        i64 u = (tag == "sqrt-pi") ? 1 : least_nonresidue(p);
        E->A = 0; E->B = u * p;
        E->piF_int = u * p;
        E->x0_a = 0; E->x0_b = 1;
    } else if (p == 2) {
        E->kind = ExtKind::ramified;
        if (tag == "sqrt(-1)") { E->d = 2; E->s = 1; E->uprime = -1; E->piF_int = -2; E->A = 2; E->B = -2; E->x0_a = -1; E->x0_b = 1; }
        else if (tag == "sqrt(3)") { E->d = 2; E->s = 1; E->uprime = 1; E->piF_int = 2; E->A = 2; E->B = 2; E->x0_a = -1; E->x0_b = 1; }
        else if (tag == "sqrt(2)") { E->d = 3; E->piF_int = 2; E->A = 0; E->B = 2; E->x0_a = 0; E->x0_b = 1; }
        else if (tag == "sqrt(-2)") { E->d = 3; E->piF_int = -2; E->A = 0; E->B = -2; E->x0_a = 0; E->x0_b = 1; }
        else if (tag == "sqrt(6)") { E->d = 3; E->piF_int = 6; E->A = 0; E->B = 6; E->x0_a = 0; E->x0_b = 1; }
        else if (tag == "sqrt(10)") { E->d = 3; E->piF_int = 10; E->A = 0; E->B = 10; E->x0_a = 0; E->x0_b = 1; }
        else throw domain_error("Ext::make: unknown tag '" + tag + "' for p=2");
    } else {
        throw domain_error("Ext::make: unknown tag '" + tag + "' for p=" + std::to_string(p));
    }

    E->validate();
    int sc_shift = 0;
    for (i64 v = sc_num < 0 ? -sc_num : sc_num; v % p == 0; v /= p) ++sc_shift;
    for (i64 v = sc_den < 0 ? -sc_den : sc_den; v % p == 0; v /= p) ++sc_shift;
    E->n_psi0 = E->scan_psi0_conductor(8 + E->e() * sc_shift);
    if (E->kind == ExtKind::ramified && sc_num == 1 && sc_den == 1) {
        int expect = (E->d % 2 == 1) ? 2 : 2 * (E->s - E->t);
        if (E->n_psi0 != expect)
            throw domain_error("psi0 conductor disagrees with closed form for " + tag);
    }
    return E;
}

KElem Ext::from_coords(i64 an, i64 ad, i64 bn, i64 bd) const {
    return KElem(this, FElem::from_rat(p, an, ad, base_prec),
                 FElem::from_rat(p, bn, bd, base_prec));
}

FElem Ext::f_from_rat(i64 num, i64 den) const { return FElem::from_rat(p, num, den, base_prec); }

KElem Ext::piK_impl() const {
    if (kind == ExtKind::unramified) return from_int(p, 0);
    return from_int(0, 1);
}

KElem Ext::piF() const { return from_int(piF_int, 0); }

KElem Ext::x0() const {
    FElem sc = FElem::from_rat(p, x0_num, x0_den, base_prec + 4);
    KElem base(this, FElem::from_int(p, x0_a, base_prec + 4), FElem::from_int(p, x0_b, base_prec + 4));
    return KElem(this, base.a() * sc, base.b() * sc);
}

Rat01 Ext::psi_frac(const FElem& x) { return x.frac_exponent(); }

Rat01 Ext::psi0(const KElem& x) const {
    // psi(tr(-x*x0/2))
    KElem z = x * this->x0();
    FElem tr = z.trace();
    FElem half = FElem::from_rat(p, -1, 2, tr.precision() + t + 2);
    return (tr * half).frac_exponent();
}

int Ext::vF_of_base(const KElem& x) const {
    if (!x.in_base_field()) throw domain_error("vF_of_base: element not in F");
    return x.a().valuation();
}

int Ext::scan_psi0_conductor(int bound) const {
    // n(psi0): largest n with psi0 trivial on P_K^{-n} (monotone in n)
    int guard = 3;
    i64 pg = pow_checked(p, guard);
    auto trivial_on = [&](int n) {
        KElem shift = piK_impl().pow(-n);
        for (i64 a = 0; a < pg; ++a)
            for (i64 b = 0; b < pg; ++b) {
                KElem x = shift * from_int(a, b);
                if (!psi0(x).zero()) return false;
            }
        return true;
    };
    for (int m = bound; m >= -bound; --m)
        if (trivial_on(m)) return m;
    throw domain_error("psi0 conductor scan failed");
}

void Ext::validate() const {
    // N(piK) = -piF in ramified kinds; d odd => tr(piK)=0 and piK^2=piF;
    // d even => Eisenstein relation and x0 a trace-zero unit with
    // piK = (piF^s u'/2)(1+x0).
    KElem pik = piK_impl();
    if (kind == ExtKind::ramified) {
        FElem n = pik.norm();
        FElem mpf = FElem::from_int(p, -piF_int, base_prec);
        if (!n.congruent(mpf, base_prec - 2)) throw domain_error("catalog: N(piK) != -piF");
        if (d % 2 == 1) {
            if (!pik.trace().is_zero()) throw domain_error("catalog: tr(piK) != 0");
            KElem sq = pik * pik;
            if (!sq.in_base_field() || !sq.a().congruent(FElem::from_int(p, piF_int, base_prec), base_prec - 2))
                throw domain_error("catalog: piK^2 != piF");
        } else {
            // X^2 - u' piF^s X - piF at X = piK
            KElem lhs = pik * pik - pik * from_int(uprime * ipow(piF_int, s), 0) - piF();
            if (!lhs.a().is_zero() || !lhs.b().is_zero()) throw domain_error("catalog: Eisenstein relation fails");
        }
    }
    KElem z = x0();
    if (!z.trace().is_zero()) throw domain_error("catalog: tr(x0) != 0");
    if (kind == ExtKind::ramified && d % 2 == 0) {
        if (x0_num == 1 && x0_den == 1) {
            if (z.vK() != 0) throw domain_error("catalog: x0 not a unit");
            // piK = (piF^s u'/2)(1 + x0)
            FElem c = FElem::from_rat(p, uprime * ipow(piF_int, s), 2, base_prec + 2);
            KElem rhs = (one() + z) * KElem(this, c, FElem::zero(p, c.precision()));
            KElem diff = pik - rhs;
            if (!diff.a().is_zero() || !diff.b().is_zero()) throw domain_error("catalog: piK != (piF^s u'/2)(1+x0)");
        }
    }
}

std::string Ext::describe() const {
    std::ostringstream os;
    os << "Q_" << p << " ext " << tag << " (" << (kind == ExtKind::ramified ? "ramified" : "unramified")
       << ", d=" << d << ", t=" << t;
    if (s >= 0) os << ", s=" << s << ", u'=" << uprime;
    os << ", piF=" << piF_int << ", n(psi0)=" << n_psi0 << ")";
    return os.str();
}

} // namespace epsc
