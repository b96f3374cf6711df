#include "toric/polytope.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace toric;

namespace {

QVec qv(std::initializer_list<Rational> xs) { return QVec(xs); }

// Independent 2-D vertex oracle: solve every 2-subset of facet equalities by
// Cramer's rule, keep the feasible solutions.
std::vector<QVec> oracle_vertices_2d(const DelzantPolytope& p) {
    std::set<QVec> out;
    const auto& fs = p.facets();
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j) {
            const Rational a = Rational(fs[i].conormal[0]), b = Rational(fs[i].conormal[1]);
            const Rational c = Rational(fs[j].conormal[0]), d = Rational(fs[j].conormal[1]);
            const Rational det = a * d - b * c;
            if (det == 0) continue;
            const Rational e = -fs[i].offset, f = -fs[j].offset;
            QVec x = {(e * d - b * f) / det, (a * f - e * c) / det};
            if (p.contains(x)) out.insert(x);
        }
    return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("cp2 simplex vertices") {
    const auto p = simplex_cpn(2);
    const std::vector<QVec> expected = {qv({0, 0}), qv({0, 1}), qv({1, 0})};
    CHECK(p.vertices() == expected);
    CHECK(oracle_vertices_2d(p) == expected);
}

TEST_CASE("point-blowup vertices agree with the subset oracle") {
    const auto p = blowup_face(2, 0, Rational(1, 8));
    // frozen from the oracle: the four corners of the cut simplex
    const std::vector<QVec> expected = {qv({0, Rational(1, 8)}), qv({0, 1}),
                                        qv({Rational(1, 8), 0}), qv({1, 0})};
    CHECK(oracle_vertices_2d(p) == expected);
    CHECK(p.vertices() == expected);
}

TEST_CASE("double blowup pentagon") {
    const auto p = double_blowup(2, Rational(1, 6));
    const auto verts = p.vertices();
    CHECK(verts == oracle_vertices_2d(p));
    const std::vector<QVec> expected = {
        qv({0, Rational(1, 6)}), qv({0, Rational(1, 3)}), qv({Rational(1, 6), 0}),
        qv({Rational(2, 3), Rational(1, 3)}), qv({1, 0})};
    CHECK(verts == expected);
}

TEST_CASE("delzant verdicts") {
    CHECK(is_delzant(simplex_cpn(2)).delzant);
    CHECK(is_delzant(simplex_cpn(4)).delzant);
    CHECK(is_delzant(blowup_face(3, 1, Rational(1, 8))).delzant);
    CHECK(is_delzant(blowup_face(2, 0, Rational(1, 2))).delzant);

    // unit square with one conormal doubled: fails at a vertex with det 2
    DelzantPolytope bad(2,
                        {{{1, 0}, 0}, {{0, 2}, 0}, {{-1, 0}, 1}, {{0, -1}, 1}},
                        "bad square");
    const auto rep = is_delzant(bad);
    CHECK_FALSE(rep.delzant);
}

TEST_CASE("face_of classifies interior, facet and vertex points") {
    const auto p = simplex_cpn(2);
    const auto interior = face_of(p, qv({Rational(1, 3), Rational(1, 3)}));
    CHECK(interior.tight_facets.empty());
    CHECK(interior.dim == 2);

    const auto edge = face_of(p, qv({0, Rational(1, 2)}));
    CHECK(edge.tight_facets == std::vector<size_t>{0});
    CHECK(edge.dim == 1);
    REQUIRE(edge.direction_lattice.size() == 1);
    ZVec dir = edge.direction_lattice[0];
    CHECK((dir == ZVec{0, 1} || dir == ZVec{0, -1}));

    const auto corner = face_of(p, qv({1, 0}));
    CHECK(corner.dim == 0);
    CHECK(corner.tight_facets.size() == 2);

    const auto b = blowup_face(2, 0, Rational(1, 8));
    CHECK(face_of(b, qv({Rational(1, 8), 0})).dim == 0);

    CHECK_THROWS_AS(face_of(p, qv({2, 2})), PointOutside);
}

TEST_CASE("constructors print the expected facet lists") {
    const auto b = blowup_face(2, 0, Rational(1, 8));
    REQUIRE(b.facets().size() == 4);
    CHECK(b.facets()[0] == Facet{{1, 0}, 0});
    CHECK(b.facets()[1] == Facet{{0, 1}, 0});
    CHECK(b.facets()[2] == Facet{{-1, -1}, 1});
    CHECK(b.facets()[3] == Facet{{1, 1}, Rational(-1, 8)});

    const auto y = double_blowup(2, Rational(1, 6));
    REQUIRE(y.facets().size() == 5);
    CHECK(y.facets()[2] == Facet{{-1, -1}, 1});
    CHECK(y.facets()[3] == Facet{{1, 1}, Rational(-1, 6)});
    CHECK(y.facets()[4] == Facet{{0, -1}, Rational(1, 3)});

    const auto sq = product(interval(0, 1), interval(0, 1));
    CHECK(sq.dim() == 2);
    CHECK(sq.facets().size() == 4);
    CHECK(sq.vertices().size() == 4);
}

TEST_CASE("parameter range errors carry the violated inequality") {
    CHECK_THROWS_AS(blowup_face(2, 0, Rational(3, 2)), ParameterOutOfRange);
    CHECK_THROWS_AS(blowup_face(2, 1, Rational(1, 8)), ParameterOutOfRange);
    CHECK_THROWS_AS(double_blowup(2, Rational(1, 2)), ParameterOutOfRange);
    CHECK_THROWS_AS(interval(1, 1), ParameterOutOfRange);
    CHECK_THROWS_AS(shifted_x0_blowup(2, Rational(1, 6), Rational(1, 2)),
                    ParameterOutOfRange);
    try {
        double_blowup(2, Rational(1, 2));
    } catch (const ParameterOutOfRange& e) {
        CHECK(std::string(e.what()).find("1/(n+1)") != std::string::npos);
    }
}

TEST_CASE("unbounded and empty inputs are reported") {
    DelzantPolytope quad(2, {{{1, 0}, 0}, {{0, 1}, 0}}, "quadrant");
    CHECK_THROWS_AS(quad.vertices(), UnboundedPolytope);
    DelzantPolytope empty(2, {{{1, 0}, 0}, {{-1, 0}, -1}, {{0, 1}, 0}, {{0, -1}, 1}},
                          "empty strip");
    CHECK_THROWS_AS(empty.vertices(), EmptyPolytope);
}

TEST_CASE("product vertices are the cartesian product") {
    const auto a = blowup_face(2, 0, Rational(1, 2));
    const auto b = interval(Rational(-1, 3), Rational(5, 7));
    const auto prod = product(a, b);
    std::set<QVec> expected;
    for (const auto& va : a.vertices())
        for (const auto& vb : b.vertices()) {
            QVec v = va;
            v.insert(v.end(), vb.begin(), vb.end());
            expected.insert(v);
        }
    const auto got = prod.vertices();
    CHECK(std::set<QVec>(got.begin(), got.end()) == expected);
}

TEST_CASE("constructor outputs satisfy the family invariants") {
    const std::vector<DelzantPolytope> family = {
        simplex_cpn(2),
        simplex_cpn(3, Rational(3, 5)),
        blowup_face(2, 0, Rational(1, 8)),
        blowup_face(3, 1, Rational(1, 8)),
        blowup_face(4, 1, Rational(1, 10)),
        double_blowup(2, Rational(1, 6)),
        double_blowup(3, Rational(1, 10)),
        hirzebruch(2),
        hirzebruch(3),
        shifted_x0_blowup(2, Rational(1, 6), Rational(1, 16)),
        interval(Rational(-1, 2), Rational(9, 4)),
    };
    for (const auto& p : family) {
        INFO(p.label());
        CHECK_FALSE(p.vertices().empty());
        CHECK(is_delzant(p).delzant);
        // every facet is supported by an (n-1)-dimensional set of vertices
        for (size_t j = 0; j < p.facets().size(); ++j) {
            QMat diffs;
            QVec base;
            for (const auto& v : p.vertices()) {
                if (p.support(j, v) != 0) continue;
                if (base.empty()) base = v;
                else diffs.push_back(sub(v, base));
            }
            REQUIRE(!base.empty());
            CHECK(qmat_rank(diffs) == p.dim() - 1);
        }
        // interior points are strictly inside
        const auto c = interior_point(p);
        CHECK(p.strictly_contains(c));
        CHECK(face_of(p, c).dim == p.dim());
    }
}

TEST_CASE("2-D H-representation is recovered from the vertices") {
    for (const auto& p : {blowup_face(2, 0, Rational(1, 8)), double_blowup(2, Rational(1, 6)),
                          hirzebruch(2), hirzebruch(3)}) {
        INFO(p.label());
        const auto& vs = p.vertices();
        std::set<std::pair<ZVec, Rational>> derived;
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t j = i + 1; j < vs.size(); ++j) {
                // hyperplane through two vertices, oriented inward
                const QVec d = sub(vs[j], vs[i]);
                Rational nx = -d[1], ny = d[0];
                bool pos = false, neg = false;
                for (const auto& w : vs) {
                    const Rational s = nx * (w[0] - vs[i][0]) + ny * (w[1] - vs[i][1]);
                    if (s > 0) pos = true;
                    if (s < 0) neg = true;
                }
                if (pos && neg) continue;  // not a supporting line
                if (neg) { nx = -nx; ny = -ny; }
                // scale to a primitive integer conormal
                const Int num_g = boost::multiprecision::gcd(numerator(nx), numerator(ny));
                const Int den_l = denominator(nx) / boost::multiprecision::gcd(denominator(nx), denominator(ny)) * denominator(ny);
                const Rational f = Rational(den_l, num_g);
                ZVec conormal = {numerator(Rational(nx * f)), numerator(Rational(ny * f))};
                Rational offset = -(Rational(conormal[0]) * vs[i][0] + Rational(conormal[1]) * vs[i][1]);
                derived.insert({conormal, offset});
            }
        std::set<std::pair<ZVec, Rational>> actual;
        for (const auto& fct : p.facets()) actual.insert({fct.conormal, fct.offset});
        CHECK(derived == actual);
    }
}
