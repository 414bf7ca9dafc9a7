#include <catch2/catch_amalgamated.hpp>

#include "fixtures_common.hpp"
#include "silt/module.hpp"

using namespace silt;

namespace {

template <class F>
struct Pack {
    AlgebraHandle<F> eximp, ejp1;
    Module<F> M;  // P(2) + P(1) + S(1) over eximp
    Pack() {
        auto f = [] {
            if constexpr (F::is_rational)
                return F{};
            else
                return F{2};
        }();
        eximp = build_algebra(eximp_quiver(f));
        ejp1 = build_algebra(ejp1_quiver(f));
        M = direct_sum(std::vector<Module<F>>{projective(eximp, 1), projective(eximp, 0),
                                              simple(eximp, 0)})
                .mod;
    }
};

}  // namespace

TEMPLATE_TEST_CASE("canonical modules and hom spaces", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    const auto& eximp = pk.eximp;

    auto P1 = projective(eximp, 0);
    auto P2 = projective(eximp, 1);
    auto P3 = projective(eximp, 2);
    P1.validate();
    P2.validate();
    P3.validate();
    CHECK(P1.vdim == std::vector<std::size_t>{1, 1, 0});
    CHECK(P2.vdim == std::vector<std::size_t>{0, 1, 1});
    CHECK(P3.vdim == std::vector<std::size_t>{1, 0, 1});
    CHECK(P1.dim() + P2.dim() + P3.dim() == 6);

    auto S1 = simple(eximp, 0);
    auto S2 = simple(eximp, 1);
    auto S3 = simple(eximp, 2);
    CHECK(S1.vdim == std::vector<std::size_t>{1, 0, 0});

    // dim hom(P(i), X) = dim e_i X on a spread of modules
    for (std::size_t i = 0; i < 3; ++i) {
        auto Pi = projective(eximp, i);
        for (const auto& X : {P1, P2, P3, S1, S2, S3, pk.M})
            CHECK(dim_hom(Pi, X) == X.vdim[i]);
    }

    CHECK(dim_hom(P2, S2) == 1);
    CHECK(dim_hom(P2, S2) != 0);

    // injectives: this algebra is self-injective, I(2) = P(1)
    auto I2 = injective(eximp, 1);
    CHECK(I2.vdim == std::vector<std::size_t>{1, 1, 0});

    // over ejp1: hom(S(1), S(1)) is one dimensional, I(2) is not projective
    auto S1e = simple(pk.ejp1, 0);
    CHECK(dim_hom(S1e, S1e) == 1);
    auto I2e = injective(pk.ejp1, 1);
    I2e.validate();
    CHECK(I2e.vdim == std::vector<std::size_t>{1, 1, 0});
    for (std::size_t j = 0; j < 3; ++j) CHECK(I2e.vdim != projective(pk.ejp1, j).vdim);
    CHECK(I2e.dim() == 2);
}

TEMPLATE_TEST_CASE("kernel, image, cokernel", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    auto P1 = projective(pk.eximp, 0);
    auto S1 = simple(pk.eximp, 0);

    auto idm = identity_map(P1);
    CHECK(kernel(idm).mod.dim() == 0);
    CHECK(cokernel(idm).mod.dim() == 0);

    // P(1) onto S(1): kernel is S(2), cokernel 0
    auto covers = hom(P1, S1);
    REQUIRE(covers.size() == 1);
    auto& pr = covers[0];
    CHECK(pr.is_surjective());
    auto ker = kernel(pr);
    CHECK(ker.mod.vdim == std::vector<std::size_t>{0, 1, 0});
    CHECK(is_iso(ker.mod, simple(pk.eximp, 1)));
    CHECK(cokernel(pr).mod.dim() == 0);
    ker.incl.validate();
    // rank-nullity in module form
    CHECK(pr.src.dim() == ker.mod.dim() + image(pr).mod.dim());
}

TEMPLATE_TEST_CASE("iso testing", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    auto P1 = projective(pk.eximp, 0);
    CHECK(is_iso(P1, P1));
    CHECK(is_iso(injective(pk.eximp, 1), P1));  // I(2) = P(1) here
    CHECK_FALSE(is_iso(simple(pk.eximp, 0), simple(pk.eximp, 1)));
    auto w = iso_witness(pk.M, pk.M);
    REQUIRE(w.has_value());
    CHECK(w->is_iso());
    w->validate();
}

TEMPLATE_TEST_CASE("decompose and rk", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    auto P1 = projective(pk.eximp, 0);

    auto two = decompose(power_module(P1, 2));
    CHECK(two.parts.size() == 2);
    CHECK(two.rk == 1);
    CHECK(two.certified);
    for (const auto& s : two.parts) CHECK(is_iso(s.part, P1));

    auto dm = decompose(pk.M);
    CHECK(dm.parts.size() == 3);
    CHECK(dm.rk == 3);

    auto reg = decompose(regular_module(pk.eximp));
    CHECK(reg.parts.size() == 3);
    CHECK(reg.rk == 3);
    bool found_p1 = false;
    for (const auto& s : reg.parts) found_p1 |= is_iso(s.part, P1);
    CHECK(found_p1);

    // inclusion/projection pairs reassemble the identity
    const auto& m = pk.M;
    Matrix<TestType> acc(m.field(), m.dim(), m.dim());
    for (const auto& s : dm.parts) {
        CHECK((s.proj.mat * s.incl.mat) == Matrix<TestType>::identity(m.field(), s.part.dim()));
        acc = acc + s.incl.mat * s.proj.mat;
    }
    CHECK(acc == Matrix<TestType>::identity(m.field(), m.dim()));

    CHECK(rk_algebra(pk.eximp) == 3);
}

TEST_CASE("decompose stress: non-split endomorphism fields", "[module][meataxe]") {
    PrimeField f(2);
    auto radsq3 = build_algebra(radsq3_quiver(f));
    // Kronecker-type module with End = F4: vdim (2,2,0), alpha = I, beta = companion of x^2+x+1
    Matrix<PrimeField> id2 = Matrix<PrimeField>::identity(f, 2);
    Matrix<PrimeField> comp(f, 2, 2);
    comp(0, 1) = f.one();
    comp(1, 0) = f.one();
    comp(1, 1) = f.one();
    std::vector<Matrix<PrimeField>> blocks{id2, comp, Matrix<PrimeField>(f, 0, 2),
                                           Matrix<PrimeField>(f, 2, 0)};
    auto R = module_from_arrows(radsq3, {2, 2, 0}, blocks);
    auto d = decompose(R);
    CHECK(d.parts.size() == 1);
    CHECK(d.certified);

    auto d2 = decompose(power_module(R, 2));  // End = M2(F4)
    CHECK(d2.parts.size() == 2);
    CHECK(d2.rk == 1);
    for (const auto& s : d2.parts) CHECK(is_iso(s.part, R));

    // direct sum of simples: End = M2(F2)
    auto s2 = decompose(power_module(simple(radsq3, 1), 2));
    CHECK(s2.parts.size() == 2);
    CHECK(s2.rk == 1);
}

TEMPLATE_TEST_CASE("annihilator and sincerity", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    CHECK(annihilator(regular_module(pk.eximp)).cols() == 0);

    auto ann = annihilator(pk.M);
    REQUIRE(ann.cols() == 1);
    // spanned by the arrow 3 -> 1 (the basis element graded (0, 2))
    std::size_t nz = 0, where = SIZE_MAX;
    for (std::size_t k = 0; k < pk.eximp->dim; ++k)
        if (!pk.M.field().is_zero(ann(k, 0))) {
            ++nz;
            where = k;
        }
    CHECK(nz == 1);
    CHECK(pk.eximp->grade[where] == std::make_pair(std::size_t{0}, std::size_t{2}));

    auto annS1 = annihilator(simple(pk.eximp, 0));
    CHECK(annS1.cols() == 5);

    CHECK(is_sincere(pk.M));
    CHECK(is_sincere(regular_module(pk.eximp)));
    CHECK_FALSE(is_sincere(simple(pk.eximp, 0)));
    CHECK(is_faithful(regular_module(pk.eximp)));
    CHECK_FALSE(is_faithful(pk.M));
}

TEMPLATE_TEST_CASE("trace precovers and gen_n membership", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    const auto& M = pk.M;

    auto split_epi = trace_precover(M, M);
    CHECK(split_epi.is_surjective());

    CHECK(trace_precover(M, simple(pk.eximp, 1)).is_surjective());

    auto z = trace_precover(projective(pk.eximp, 0), simple(pk.eximp, 2));
    CHECK(z.mat.cols() == 0);  // no maps at all
    CHECK_FALSE(z.is_surjective());

    // add(M) members lie in gen_n for all n
    CHECK(in_gen_n(projective(pk.eximp, 0), M, 2).holds());
    CHECK(in_gen_n(M, M, 3).holds());
    CHECK(in_gen_n(zero_module(pk.eximp), M, 2).holds());
    // S(2) is in gen_1 but not gen_2
    CHECK(in_gen_n(simple(pk.eximp, 1), M, 1).holds());
    CHECK(in_gen_n(simple(pk.eximp, 1), M, 2).fails());
}

TEMPLATE_TEST_CASE("quotient restriction", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    auto ann = annihilator(pk.M);
    auto q = quotient_algebra(pk.eximp, ann);
    CHECK(q.algebra->dim == 5);
    CHECK(q.algebra->nclasses == 3);
    q.algebra->check_invariants();

    auto Mg = restrict_module(pk.M, q, ann);
    Mg.validate();
    CHECK(Mg.dim() == pk.M.dim());
    CHECK(is_sincere(Mg));

    // restriction to the semisimple quotient
    auto qs = quotient_algebra(pk.eximp, pk.eximp->radical_span());
    auto S1g = restrict_module(simple(pk.eximp, 0), qs, pk.eximp->radical_span());
    S1g.validate();
    CHECK(S1g.dim() == 1);

    // a module not annihilated by the ideal is rejected
    CHECK_THROWS_AS(restrict_module(regular_module(pk.eximp), q, ann), NotAnnihilated);
}

TEMPLATE_TEST_CASE("duality", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    auto dd = dual(dual(pk.M));
    CHECK(dd.alg.get() == pk.M.alg.get());
    CHECK(is_iso(dd, pk.M));
    dual(pk.M).validate();
}

TEMPLATE_TEST_CASE("endomorphism algebras", "[module]", PrimeField, RationalField) {
    Pack<TestType> pk;
    auto e1 = end_algebra(simple(pk.eximp, 0));
    CHECK(e1.algebra->dim == 1);
    e1.algebra->check_invariants();

    auto P1 = projective(pk.eximp, 0);
    auto e4 = end_algebra(power_module(P1, 2));
    CHECK(e4.algebra->dim == 4);
    CHECK(e4.algebra->nclasses == 2);
    CHECK(e4.algebra->radical.empty());  // End(P1) = k, so End(P1^2) = M2(k) is semisimple
    e4.algebra->check_invariants();

    auto eM = end_algebra(pk.M);
    CHECK(eM.algebra->dim == dim_hom(pk.M, pk.M));
    eM.algebra->check_invariants();
}
