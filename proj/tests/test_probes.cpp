#include "toric/probes.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace toric;

namespace {

QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }

// Independent exit-parameter oracle: walk the ray base + t*dir and take the
// first t at which any facet inequality turns negative, found by solving each
// facet equation separately.
Rational oracle_exit(const DelzantPolytope& p, const QVec& base, const ZVec& dir) {
    std::optional<Rational> best;
    for (size_t j = 0; j < p.facets().size(); ++j) {
        const Rational num = p.support(j, base);
        const Rational den = -dot(p.facets()[j].conormal, dir);
        if (den <= 0) continue;
        const Rational t = num / den;
        if (!best || t < *best) best = t;
    }
    REQUIRE(best.has_value());
    return *best;
}

}  // namespace

TEST_CASE("probe lengths") {
    const auto cp2 = simplex_cpn(2);
    const Probe p1{0, qv({0, Rational(1, 3)}), {1, 0}};
    CHECK(probe_length(cp2, p1) == Rational(2, 3));
    CHECK(oracle_exit(cp2, p1.base, p1.dir) == Rational(2, 3));

    const auto square = product(interval(0, 1), interval(0, 1));
    // facet order: x>=0, x<=1, y>=0, y<=1
    const Probe p2{0, qv({0, Rational(1, 2)}), {1, 0}};
    CHECK(probe_length(square, p2) == 1);

    const auto bl = blowup_face(2, 0, Rational(1, 8));
    const Probe p3{0, qv({0, Rational(1, 2)}), {1, 0}};
    CHECK(probe_length(bl, p3) == Rational(1, 2));
    CHECK(oracle_exit(bl, p3.base, p3.dir) == Rational(1, 2));
}

TEST_CASE("invalid probes are rejected") {
    const auto cp2 = simplex_cpn(2);
    // base at a vertex, not in the relative interior of the facet
    CHECK_THROWS_AS(probe_length(cp2, Probe{0, qv({0, 0}), {1, 0}}), InvalidProbe);
    // direction not integrally transverse
    CHECK_THROWS_AS(probe_length(cp2, Probe{0, qv({0, Rational(1, 3)}), {2, 0}}), InvalidProbe);
    // base off the facet
    CHECK_THROWS_AS(probe_length(cp2, Probe{0, qv({Rational(1, 4), Rational(1, 4)}), {1, 0}}),
                    InvalidProbe);
}

TEST_CASE("probe displacement certificates") {
    const auto cp2 = simplex_cpn(2);
    const Probe pr{0, qv({0, Rational(1, 3)}), {1, 0}};

    const auto hit = probe_displaces(cp2, pr, qv({Rational(1, 4), Rational(1, 3)}));
    REQUIRE(hit.has_value());
    CHECK(hit->t_point == Rational(1, 4));
    CHECK(hit->t_exit == Rational(2, 3));
    CHECK(validate_certificate(cp2, *hit, qv({Rational(1, 4), Rational(1, 3)})));

    // exactly half the probe length: not displaced
    CHECK_FALSE(probe_displaces(cp2, pr, qv({Rational(1, 3), Rational(1, 3)})).has_value());
    // off the probe line
    CHECK_FALSE(probe_displaces(cp2, pr, qv({Rational(1, 4), Rational(1, 2)})).has_value());
    CHECK_THROWS_AS(probe_displaces(cp2, pr, qv({2, 2})), PointOutside);
}

TEST_CASE("probe search on the small blowup") {
    const auto bl = blowup_face(2, 0, Rational(1, 8));
    auto pr = find_displacing_probe(bl, qv({Rational(1, 2), Rational(1, 8)}), 3);
    REQUIRE(pr.has_value());
    auto cert = probe_displaces(bl, *pr, qv({Rational(1, 2), Rational(1, 8)}));
    REQUIRE(cert.has_value());
    CHECK(validate_certificate(bl, *cert, qv({Rational(1, 2), Rational(1, 8)})));

    CHECK_FALSE(find_displacing_probe(bl, qv({Rational(1, 3), Rational(1, 3)}), 5).has_value());
    CHECK_FALSE(find_displacing_probe(bl, qv({Rational(1, 8), Rational(1, 8)}), 5).has_value());
    CHECK_THROWS_AS(find_displacing_probe(bl, qv({0, Rational(1, 2)}), 3), PointNotInterior);
}

TEST_CASE("survivor scans match the known fibers") {
    const auto cp2_surv = survivor_scan(simplex_cpn(2), 60, 3);
    CHECK(cp2_surv == std::vector<QVec>{qv({Rational(1, 3), Rational(1, 3)})});

    const auto small = survivor_scan(blowup_face(2, 0, Rational(1, 8)), 24, 3);
    CHECK(small == std::vector<QVec>{qv({Rational(1, 8), Rational(1, 8)}),
                                     qv({Rational(1, 3), Rational(1, 3)})});

    // large blowup: the single stem point with all coordinates (1+lambda)/4
    const auto large = survivor_scan(blowup_face(2, 0, Rational(1, 2)), 40, 3);
    CHECK(large == std::vector<QVec>{qv({Rational(3, 8), Rational(3, 8)})});
}

TEST_CASE("survivors shrink as the direction bound grows") {
    const auto bl = blowup_face(2, 0, Rational(1, 8));
    const auto s1 = survivor_scan(bl, 12, 1);
    const auto s3 = survivor_scan(bl, 12, 3);
    for (const auto& p : s3)
        CHECK(std::find(s1.begin(), s1.end(), p) != s1.end());
    CHECK(s3.size() <= s1.size());
}

TEST_CASE("stem certification") {
    const auto h2 = certify_stem(hirzebruch(2), qv({1, Rational(1, 2)}), 16, 4);
    CHECK(h2.candidate_survives);
    CHECK(h2.other_survivors.empty());
    CHECK(h2.stem_evidence);

    const auto bl = certify_stem(blowup_face(2, 0, Rational(1, 8)),
                                 qv({Rational(1, 3), Rational(1, 3)}), 24, 3);
    CHECK(bl.candidate_survives);
    CHECK_FALSE(bl.stem_evidence);
    CHECK(bl.other_survivors == std::vector<QVec>{qv({Rational(1, 8), Rational(1, 8)})});

    const auto cp = certify_stem(simplex_cpn(2), qv({Rational(1, 3), Rational(1, 3)}), 30, 3);
    CHECK(cp.stem_evidence);
}

TEST_CASE("certificates revalidate on a grid sweep") {
    const auto bl = blowup_face(2, 0, Rational(1, 8));
    size_t displaced = 0;
    for (const auto& u : interior_grid_points(bl, 12)) {
        const auto pr = find_displacing_probe(bl, u, 3);
        if (!pr) continue;
        const auto cert = probe_displaces(bl, *pr, u);
        REQUIRE(cert.has_value());
        CHECK(validate_certificate(bl, *cert, u));
        ++displaced;
    }
    CHECK(displaced > 30);
}

TEST_CASE("probe data transports along unimodular affine maps") {
    const auto bl = blowup_face(2, 0, Rational(1, 8));
    const IMat a = {{1, 1}, {0, 1}};
    const QVec t = {3, -2};
    const auto img = transform(bl, a, t);

    // probe from the x2 = 0 facet through (1/2, 1/8)
    const QVec u = qv({Rational(1, 2), Rational(1, 8)});
    const auto pr = find_displacing_probe(bl, u, 3);
    REQUIRE(pr.has_value());
    Probe moved{pr->facet, add(imat_vec(a, pr->base), t), imat_vec(a, pr->dir)};
    CHECK(probe_length(img, moved) == probe_length(bl, *pr));
    const QVec u_img = add(imat_vec(a, u), t);
    CHECK(probe_displaces(img, moved, u_img).has_value());

    // survivor sets transport (integer translation keeps the grid aligned)
    const auto s = survivor_scan(bl, 12, 3);
    auto s_img = survivor_scan(img, 12, 3);
    std::vector<QVec> expected;
    for (const auto& x : s) expected.push_back(add(imat_vec(a, x), t));
    std::sort(expected.begin(), expected.end());
    CHECK(s_img == expected);
}

TEST_CASE("survivor sets respect coordinate symmetry") {
    const auto bl = blowup_face(2, 0, Rational(1, 8));
    const auto s = survivor_scan(bl, 12, 3);
    std::set<QVec> as_set(s.begin(), s.end());
    for (const auto& x : s) CHECK(as_set.count(qv({x[1], x[0]})) == 1);
}
