#include "doctest.h"

#include "powellkit/powell_engine.hpp"

using namespace pk;

TEST_CASE("braid moves factor through Powell generators") {
    MappingClasses M(GeneratorTable::standard(2));
    PowellEngine E(M);
    Certificate c = E.braid_to_powell(parse_braid_spec("bubble 1; path b2", 2));
    CHECK(c.passed());
    CHECK(M.equals(c.output, parse_mcword("Dtheta Domega Dtheta Domega", 2)));
    Certificate d = E.braid_to_powell(parse_braid_spec("bubble 2; path a1 b1'", 2));
    CHECK(d.passed());
    CHECK(M.equals(d.output, braid_move_word(parse_braid_spec("bubble 2; path a1 b1'", 2))));
}

TEST_CASE("powellize rejects meridian twists") {
    MappingClasses M(GeneratorTable::standard(3));
    PowellEngine E(M);
    CHECK_THROWS_AS(E.powellize(twist_symbol({'a', 1})), NotGoeritz);
    CHECK_THROWS_AS(E.powellize(twist_symbol({'b', 2})), NotGoeritz);
    MCWord w = E.powellize(twist_symbol({'c', 1}));
    CHECK(is_powell_word(w));
    CHECK(M.equals(w, {twist_symbol({'c', 1})}));
}

TEST_CASE("eyeglass twists") {
    MappingClasses M(GeneratorTable::standard(3));
    PowellEngine E(M);
    // E(alpha, beta) and E(alpha^-1, beta^-1) are the same map
    PiOneAuto f = E.eyeglass_twist({X(1)}, {-Y(2)});
    PiOneAuto h = E.eyeglass_twist({-X(1)}, {Y(2)});
    CHECK(M.check_equal(f, h).holds());
    Certificate c = E.eyeglass_factor(EyeglassFrame::parse("A: x1\nB: Y2\n", 3), std::nullopt);
    CHECK(c.passed());
    MCWord prov = parse_mcword("Deta Dnu", 3);
    PiOneAuto g = M.compile(prov);
    EyeglassFrame fr;
    fr.lens_a.side = Side::A;
    fr.lens_b.side = Side::B;
    fr.lens_a.factors = lens_factors(M.group().dehn(pk::apply(g, {X(1)})), Side::A);
    fr.lens_b.factors = lens_factors(M.group().dehn(pk::apply(g, {-Y(2)})), Side::B);
    Certificate p = E.eyeglass_factor(fr, prov);
    CHECK(p.passed());
    CHECK(M.equals(p.output, conjugate(prov, {powell(MoveKind::Dtheta)})));
    CHECK_THROWS_AS(E.eyeglass_factor(EyeglassFrame::parse("A: x1\nB: Y2\nbridge 3\n", 3), std::nullopt), BridgeParity);
}

TEST_CASE("orthogonal replacement on an eyeglass image") {
    MappingClasses M(GeneratorTable::standard(2));
    PowellEngine E(M);
    PiOneAuto f = E.eyeglass_twist({X(1)}, {-Y(2)});
    Letters b = M.act_on_curve(f, Word{{Y(1)}, true}).letters;
    Certificate c = E.orthogonal_replace({b, {}});
    CHECK(c.passed());
    Letters img = M.act_on_curve(M.compile(c.output), Word{{Y(1)}, true}).letters;
    CHECK(M.group().are_conjugate(img, b).has_value());
    CHECK_THROWS_AS(E.orthogonal_replace({{Y(2)}, {}}), NotOrthogonal);
}

TEST_CASE("sigma reduction peels conjugates of sigma") {
    MappingClasses M(GeneratorTable::standard(2));
    PowellEngine E(M);
    MixedWord rho = parse_mixed_word("a1 b2 s a2' s b1");
    SigmaReduction r = E.sigma_reduce(rho);
    REQUIRE(r.factors.size() == 2);
    CHECK(format_mixed_word(r.factors[0].factor) == "a1 b2 s b2' a1'");
    CHECK(sigma_count(r.residual) == 0);
    CHECK(format_mixed_word(r.residual) == "a1 a2' b2 b1");
    CHECK_THROWS_AS(parse_mixed_word("c1"), AlphabetError);
}

TEST_CASE("short eyeglass reduction") {
    MappingClasses M(GeneratorTable::standard(2));
    PowellEngine E(M);
    ShortEyeglassNode root = E.short_eyeglass_reduce(BridgeFrame::parse("crossings: 0 2 1\nplanar: A\n"));
    REQUIRE(root.children.size() == 2);
    for (const auto& ch : root.children) CHECK(ch.frame.count() == 1);
    CHECK_THROWS_AS(E.short_eyeglass_reduce(BridgeFrame::parse("crossings: 0 1\nplanar: A\n")), ParityError);
    CHECK_THROWS_AS(E.short_eyeglass_reduce(BridgeFrame::parse("crossings: 0 2 1\nplanar: none\n")), NotShort);
}

TEST_CASE("certificates render in both formats") {
    MappingClasses M(GeneratorTable::standard(2));
    PowellEngine E(M);
    Certificate c = E.braid_to_powell(parse_braid_spec("bubble 1; path a2", 2));
    CHECK(render(c, OutputFormat::Text).find("pi1_check: pass") != std::string::npos);
    CHECK(render(c, OutputFormat::Structured).find("\"h1_check\": \"pass\"") != std::string::npos);
}
