#pragma once

#include "toric/polytope.hpp"

#include <atomic>
#include <optional>
#include <thread>
#include <vector>

namespace toric {

/// A rational segment entering the polytope from the relative interior of a
/// facet, in a primitive integer direction integrally transverse to it
/// (<conormal, dir> = 1).  Fibers strictly less than halfway along the
/// segment are displaceable.
struct Probe {
    size_t facet = 0;
    QVec base;
    ZVec dir;
};

struct DisplacementCertificate {
    Probe probe;
    Rational t_point;  // parameter of the displaced fiber on the probe
    Rational t_exit;   // parameter where the probe leaves the polytope
};

inline void check_probe(const DelzantPolytope& p, const Probe& pr) {
    if (pr.facet >= p.facets().size() || pr.dir.size() != p.dim() ||
        pr.base.size() != p.dim())
        throw InvalidProbe("probe data does not match the polytope");
    if (dot(p.facets()[pr.facet].conormal, pr.dir) != 1)
        throw InvalidProbe("probe direction is not integrally transverse to its facet");
    if (vec_gcd(pr.dir) != 1) throw InvalidProbe("probe direction is not primitive");
    if (p.support(pr.facet, pr.base) != 0)
        throw InvalidProbe("probe base is not on its facet");
    for (size_t j = 0; j < p.facets().size(); ++j)
        if (j != pr.facet && p.support(j, pr.base) <= 0)
            throw InvalidProbe("probe base is not in the relative interior of its facet");
}

/// Exit parameter max{t >= 0 : base + t dir in P}.
inline Rational probe_length(const DelzantPolytope& p, const Probe& pr) {
    check_probe(p, pr);
    std::optional<Rational> best;
    for (size_t j = 0; j < p.facets().size(); ++j) {
        const Rational speed = dot(p.facets()[j].conormal, pr.dir);
        if (speed >= 0) continue;
        const Rational t = p.support(j, pr.base) / -speed;
        if (!best || t < *best) best = t;
    }
    if (!best) throw InvalidProbe("probe never exits; polytope unbounded?");
    return *best;
}

/// Certificate that the fiber over u is displaced by the probe, i.e. u lies
/// on the probe strictly before half of its length.
inline std::optional<DisplacementCertificate> probe_displaces(const DelzantPolytope& p,
                                                              const Probe& pr,
                                                              const QVec& u) {
    if (!p.contains(u)) throw PointOutside("fiber point " + vec_str(u) + " is outside");
    const Rational t_exit = probe_length(p, pr);
    std::optional<Rational> t;
    for (size_t i = 0; i < p.dim(); ++i) {
        if (pr.dir[i] == 0) {
            if (u[i] != pr.base[i]) return std::nullopt;
            continue;
        }
        const Rational ti = (u[i] - pr.base[i]) / Rational(pr.dir[i]);
        if (t && *t != ti) return std::nullopt;
        t = ti;
    }
    if (!t || !(*t > 0) || !(2 * *t < t_exit)) return std::nullopt;
    return DisplacementCertificate{pr, *t, t_exit};
}

namespace detail {

/// Lexicographic odometer over {-bound..bound}^n.
inline bool next_in_box(ZVec& v, long bound) {
    for (size_t i = v.size(); i-- > 0;) {
        if (v[i] < bound) {
            ++v[i];
            for (size_t j = i + 1; j < v.size(); ++j) v[j] = -bound;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Searches facets in index order and directions in lexicographic order over
/// the |v|_inf <= dir_bound box for a probe displacing the fiber over u.
inline std::optional<Probe> find_displacing_probe(const DelzantPolytope& p, const QVec& u,
                                                  long dir_bound) {
    if (!p.strictly_contains(u))
        throw PointNotInterior("fiber point " + vec_str(u) + " is not interior");
    const size_t n = p.dim();
    for (size_t f = 0; f < p.facets().size(); ++f) {
        const Rational t_point = p.support(f, u);  // <conormal, dir> = 1 forces this
        ZVec v(n, -dir_bound);
        bool more = true;
        for (; more; more = detail::next_in_box(v, dir_bound)) {
            if (dot(p.facets()[f].conormal, v) != 1) continue;
            QVec base(n);
            bool relint = true;
            for (size_t i = 0; i < n; ++i) base[i] = u[i] - t_point * Rational(v[i]);
            for (size_t j = 0; j < p.facets().size() && relint; ++j) {
                if (j == f) continue;
                if (p.support(j, base) <= 0) relint = false;
            }
            if (!relint) continue;
            Probe pr{f, base, v};
            std::optional<Rational> t_exit;
            for (size_t j = 0; j < p.facets().size(); ++j) {
                const Rational speed = dot(p.facets()[j].conormal, v);
                if (speed >= 0) continue;
                const Rational t = p.support(j, base) / -speed;
                if (!t_exit || t < *t_exit) t_exit = t;
            }
            if (t_exit && 2 * t_point < *t_exit) return pr;
        }
    }
    return std::nullopt;
}

/// Interior points of P whose coordinates have denominator dividing q,
/// in lexicographic order.
inline std::vector<QVec> interior_grid_points(const DelzantPolytope& p, long q) {
    const size_t n = p.dim();
    const auto& verts = p.vertices();
    std::vector<long> lo(n), hi(n);
    for (size_t i = 0; i < n; ++i) {
        Rational mn = verts[0][i], mx = verts[0][i];
        for (const auto& v : verts) {
            if (v[i] < mn) mn = v[i];
            if (v[i] > mx) mx = v[i];
        }
        // strict interior, so open bounds are enough
        const Int fl = numerator(Rational(mn * q)) / denominator(Rational(mn * q));
        const Int fh = numerator(Rational(mx * q)) / denominator(Rational(mx * q));
        lo[i] = fl.convert_to<long>() - 1;
        hi[i] = fh.convert_to<long>() + 1;
    }
    std::vector<QVec> out;
    std::vector<long> k(lo);
    for (;;) {
        QVec x(n);
        for (size_t i = 0; i < n; ++i) x[i] = Rational(k[i], q);
        if (p.strictly_contains(x)) out.push_back(std::move(x));
        size_t i = n;
        while (i-- > 0) {
            if (k[i] < hi[i]) {
                ++k[i];
                break;
            }
            k[i] = lo[i];
            if (i == 0) return out;
        }
    }
}

/// All interior grid points that no probe within the direction bound
/// displaces.  Deterministic (sorted) result regardless of thread schedule.
inline std::vector<QVec> survivor_scan(const DelzantPolytope& p, long grid_denominator,
                                       long dir_bound) {
    if (grid_denominator < 2)
        throw ParameterOutOfRange("survivor_scan: need grid denominator >= 2");
    const auto pts = interior_grid_points(p, grid_denominator);
    std::vector<char> survives(pts.size(), 0);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<size_t>(hw, pts.size() ? pts.size() : 1));
    if (workers <= 1) {
        for (size_t i = 0; i < pts.size(); ++i)
            survives[i] = !find_displacing_probe(p, pts[i], dir_bound);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < pts.size(); i = next.fetch_add(1))
                    survives[i] = !find_displacing_probe(p, pts[i], dir_bound);
            });
        for (auto& th : pool) th.join();
    }
    std::vector<QVec> out;
    for (size_t i = 0; i < pts.size(); ++i)
        if (survives[i]) out.push_back(pts[i]);
    std::sort(out.begin(), out.end());
    return out;
}

struct StemReport {
    QVec candidate;
    bool candidate_survives = false;
    std::vector<QVec> other_survivors;
    std::vector<QVec> survivors;
    bool stem_evidence = false;
};

/// Empirical stem check: the candidate survives the probe search and the grid
/// scan finds no other survivor.  Evidence only; probes certify
/// displaceability, never non-displaceability.
inline StemReport certify_stem(const DelzantPolytope& p, const QVec& candidate,
                               long grid_denominator, long dir_bound) {
    StemReport rep;
    rep.candidate = candidate;
    rep.candidate_survives = !find_displacing_probe(p, candidate, dir_bound);
    rep.survivors = survivor_scan(p, grid_denominator, dir_bound);
    for (const auto& s : rep.survivors)
        if (s != candidate) rep.other_survivors.push_back(s);
    rep.stem_evidence = rep.candidate_survives && rep.other_survivors.empty();
    return rep;
}

/// Independent revalidation of a certificate against the displaced point u.
inline bool validate_certificate(const DelzantPolytope& p, const DisplacementCertificate& c,
                                 const QVec& u) {
    const auto& pr = c.probe;
    if (pr.facet >= p.facets().size()) return false;
    if (dot(p.facets()[pr.facet].conormal, pr.dir) != 1) return false;
    if (vec_gcd(pr.dir) != 1) return false;
    if (p.support(pr.facet, pr.base) != 0) return false;
    for (size_t j = 0; j < p.facets().size(); ++j)
        if (j != pr.facet && p.support(j, pr.base) <= 0) return false;
    for (size_t i = 0; i < p.dim(); ++i)
        if (u[i] != pr.base[i] + c.t_point * Rational(pr.dir[i])) return false;
    if (!(c.t_point > 0) || !(2 * c.t_point < c.t_exit)) return false;
    QVec exit_pt(p.dim());
    for (size_t i = 0; i < p.dim(); ++i)
        exit_pt[i] = pr.base[i] + c.t_exit * Rational(pr.dir[i]);
    return p.contains(exit_pt) && !p.strictly_contains(exit_pt);
}

struct SurvivorReport {
    std::string polytope;
    long grid = 0;
    long dir_bound = 0;
    std::vector<QVec> survivors;
    std::vector<std::pair<QVec, DisplacementCertificate>> certificates_sampled;
};

inline SurvivorReport survivor_report(const DelzantPolytope& p, long grid_denominator,
                                      long dir_bound, size_t sample = 3) {
    SurvivorReport rep;
    rep.polytope = p.label();
    rep.grid = grid_denominator;
    rep.dir_bound = dir_bound;
    rep.survivors = survivor_scan(p, grid_denominator, dir_bound);
    for (const auto& u : interior_grid_points(p, grid_denominator)) {
        if (rep.certificates_sampled.size() >= sample) break;
        auto pr = find_displacing_probe(p, u, dir_bound);
        if (!pr) continue;
        auto cert = probe_displaces(p, *pr, u);
        if (cert) rep.certificates_sampled.emplace_back(u, *cert);
    }
    return rep;
}

}  // namespace toric
