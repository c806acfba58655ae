#pragma once

#include <random>
#include <vector>

#include "wondertope/algebra.hpp"

namespace wtt {

using namespace wt;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed = 0) : gen(seed) {}

    int intin(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }

    Rat rat(int lo = -9, int hi = 9, int max_den = 9) {
        return wt::rat(intin(lo, hi), intin(1, max_den));
    }

    std::vector<Rat> point(size_t n, int lo = -19, int hi = 19) {
        std::vector<Rat> p;
        for (size_t i = 0; i < n; ++i) p.push_back(wt::rat(intin(lo, hi), intin(1, 7)));
        return p;
    }

    MPoly mpoly(const std::vector<std::string>& vars, int max_deg = 3, int terms = 4) {
        MPoly p(vars);
        int t = intin(1, terms);
        for (int i = 0; i < t; ++i) {
            Exp e(vars.size(), 0);
            int budget = intin(0, max_deg);
            for (size_t v = 0; v < vars.size() && budget > 0; ++v) {
                e[v] = intin(0, budget);
                budget -= e[v];
            }
            p.add_term(e, rat());
        }
        return p;
    }

    MPoly mpoly_nonzero(const std::vector<std::string>& vars, int max_deg = 3, int terms = 4) {
        MPoly p = mpoly(vars, max_deg, terms);
        while (p.is_zero()) p = mpoly(vars, max_deg, terms);
        return p;
    }

    RatFunc ratfunc(const std::vector<std::string>& vars, int max_deg = 3) {
        return RatFunc(mpoly(vars, max_deg), mpoly_nonzero(vars, max_deg));
    }
};

/// Evaluates f at a random pole-free point and compares with g there.
inline bool eval_agree(const RatFunc& f, const RatFunc& g, Rng& rng, int trials = 10) {
    if (f.vars() != g.vars()) return false;
    int done = 0;
    int attempts = 0;
    while (done < trials && attempts < 1000) {
        ++attempts;
        auto p = rng.point(f.vars().size());
        try {
            if (f.eval(p) != g.eval(p)) return false;
            ++done;
        } catch (const error&) {
            continue;  // hit a pole, resample
        }
    }
    return done == trials;
}

}  // namespace wtt
