#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epsc/padic.hpp"

using namespace epsc;

TEST_CASE("FElem basic arithmetic and fractional parts") {
    auto x = FElem::from_rat(3, 1, 3, 10);
    CHECK(x.valuation() == -1);
    CHECK(x.frac_exponent() == Rat01(1, 3));

    CHECK(FElem::from_int(3, 7, 10).frac_exponent() == Rat01(0, 1));

    // 1/9 + 2/3 -> digit expansion 1*3^-2 + 2*3^-1 -> 7/9
    auto y = FElem::from_rat(3, 1, 9, 10) + FElem::from_rat(3, 2, 3, 10);
    CHECK(y.frac_exponent() == Rat01(7, 9));

    // additive inverse cancels to full precision
    auto z = x + x.negated();
    CHECK(z.is_zero());

    // unit inverse by modular arithmetic, checked by multiplication
    auto u = FElem::from_int(5, 7, 12);
    auto ui = u.unit_inverse();
    CHECK((u * ui).congruent(FElem::from_int(5, 1, 12), 11));

    CHECK_THROWS_AS(FElem::from_int(3, 3, 10).unit_inverse(), domain_error);
    CHECK_THROWS_AS(FElem::zero(3, 10).valuation(), precision_error);
}

TEST_CASE("FElem precision tracking") {
    // product precision: min justified
    auto a = FElem::from_int(3, 2, 4);   // known mod 3^4
    auto b = FElem::from_rat(3, 1, 3, 4);
    auto c = a * b;                       // v = -1, prec = min(4-1, 4+0)
    CHECK(c.valuation() == -1);
    CHECK(c.precision() == 3);
    // inverse loses 2*val digits
    auto d = FElem::from_int(3, 9, 10);
    CHECK(d.inverse().precision() == 10 - 2 * 2);
    // frac of element with unknown negative digits must throw
    auto e = FElem::from_rat(3, 1, 9, -1);   // v = -2, only one digit known
    CHECK_THROWS_AS(e.frac_exponent(), precision_error);
    // constructing with no justified digit at all is an error
    CHECK_THROWS_AS(FElem::from_rat(3, 1, 3, -1), precision_error);
}

TEST_CASE("catalog R3 = Q_3(sqrt 3)") {
    auto E = Ext::make(3, "sqrt-pi");
    CHECK(E->d == 1);
    CHECK(E->t == 0);
    CHECK(E->n_psi0 == 2);
    CHECK(E->qK() == 3);

    auto piK = E->piK();
    auto sq = piK * piK;                  // pi_K^2 = pi_F, v_K = 2
    CHECK(sq.in_base_field());
    CHECK(sq.vK() == 2);
    CHECK(sq.a().congruent(E->f_from_rat(3, 1), 10));

    // galois data: (-piK, 0, -piF)
    CHECK(piK.conj().b().congruent(E->f_from_rat(-1, 1), 10));
    CHECK(piK.trace().is_zero());
    CHECK(piK.norm().congruent(E->f_from_rat(-3, 1), 10));

    // valuations
    CHECK(E->piF().vK() == 2);
    CHECK(E->x0().vK() == 1);

    // invert unit, checked by multiplication
    auto u = E->one() + piK;
    auto ui = u.unit_inverse();
    auto prod = u * ui;
    CHECK(prod.a().congruent(E->f_from_rat(1, 1), 6));
    CHECK(prod.b().is_zero());
}

TEST_CASE("catalog G2 = Q_2(i)") {
    auto E = Ext::make(2, "sqrt(-1)");
    CHECK(E->d == 2);
    CHECK(E->s == 1);
    CHECK(E->t == 1);
    CHECK(E->uprime == -1);
    CHECK(E->piF_int == -2);
    CHECK(E->n_psi0 == 0);

    // piK = 1+i (coords of g), x0 = i = g-1 a unit of trace zero
    CHECK(E->x0().vK() == 0);
    CHECK(E->x0().trace().is_zero());

    // galois_data(1+i) = (1-i, 2, 2); here g = 1+i so conj(g) = A - g = 2 - g
    auto g = E->piK();
    CHECK(g.trace().congruent(E->f_from_rat(2, 1), 10));
    CHECK(g.norm().congruent(E->f_from_rat(2, 1), 10));
}

TEST_CASE("catalog unramified extensions") {
    auto U3 = Ext::make(3, "unramified");
    CHECK(U3->d == 0);
    CHECK(U3->qK() == 9);
    CHECK(U3->piF().vK() == 1);         // e = 1
    CHECK(U3->n_psi0 == 0);
    CHECK(U3->x0().trace().is_zero());
    CHECK(U3->x0().vK() == 0);

    auto U2 = Ext::make(2, "unramified");
    CHECK(U2->d == 0);
    CHECK(U2->t == 1);
    CHECK(U2->n_psi0 == -1);            // psi0 nontrivial on O_K for p=2
    CHECK(U2->x0().trace().is_zero());

    // conj is an involution; trace and norm land in F
    auto x = U2->from_int(3, 5);
    auto xc = x.conj();
    CHECK((xc.conj() - x).is_zero());
    CHECK(xc.conj().a().congruent(x.a(), 20));
    CHECK(x.trace().p() == 2);
    auto nrm = x.norm();
    auto direct = (x * x.conj());
    CHECK(direct.in_base_field());
    CHECK(nrm.congruent(direct.a(), 20));
}

TEST_CASE("all seven quadratic extensions of Q_2 validate at startup") {
    for (auto& tag : catalog_tags(2)) {
        auto E = Ext::make(2, tag);
        CHECK(E->p == 2);
        if (E->kind == ExtKind::ramified) {
            CHECK((E->n_psi0 % 2) == 0);
            // N(piK) = -piF
            CHECK(E->piK().norm().congruent(E->f_from_rat(-E->piF_int, 1), 10));
        }
    }
    CHECK_THROWS_AS(Ext::make(4, "sqrt-pi"), domain_error);
    CHECK_THROWS_AS(Ext::make(3, "sqrt(7)"), domain_error);
}

TEST_CASE("psi has conductor exactly zero") {
    SplitMix64 rng(42);
    for (int i = 0; i < 100; ++i) {
        i64 v = i64(rng.below(1u << 20));
        CHECK(FElem::from_int(3, v, 12).frac_exponent().zero());
    }
    CHECK_FALSE(FElem::from_rat(3, 1, 3, 12).frac_exponent().zero());
}

TEST_CASE("psi0 evaluation on R3 (spec examples)") {
    auto E = Ext::make(3, "sqrt-pi");
    // trivial on F
    for (i64 c : {1, 2, 5, 9, 14})
        CHECK(E->psi0(E->from_int(c, 0)).zero());
    // psi0(piK^-3) = frac(-piF^-1) = 2/3
    CHECK(E->psi0(E->piK().pow(-3)) == Rat01(2, 3));
    // psi0(piK^-2) = 0 (trace-zero integrand)
    CHECK(E->psi0(E->piK().pow(-2)).zero());
}

TEST_CASE("psi0 vanishes on F within precision window") {
    for (auto& spec : std::vector<std::pair<i64, std::string>>{{3, "sqrt-pi"}, {2, "sqrt(-1)"}, {2, "unramified"}}) {
        auto E = Ext::make(spec.first, spec.second);
        SplitMix64 rng(7);
        for (int i = 0; i < 100; ++i) {
            i64 num = i64(rng.below(1u << 16)) - (1 << 15);
            int shift = int(rng.below(3)) - 1;
            if (num == 0) num = 1;
            auto x = KElem(E.get(), E->f_from_rat(num, 1).shifted(shift), FElem::zero(E->p, E->base_prec));
            CHECK(E->psi0(x).zero());
        }
    }
}

TEST_CASE("x0 rescaling shifts psi0 conductor") {
    auto E = Ext::make(3, "sqrt-pi", 2, 1);   // unit rescale: conductor unchanged
    CHECK(E->n_psi0 == 2);
    auto E2 = Ext::make(3, "sqrt-pi", 3, 1);  // pi_F rescale: conductor shifts by e*v
    CHECK(E2->n_psi0 == 2 + 2);
    auto E3 = Ext::make(3, "sqrt-pi", 1, 3);
    CHECK(E3->n_psi0 == 2 - 2);
}
