#include "wondertope/matroid.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "wondertope/rat.hpp"

namespace wt {

namespace {

int popcount(uint32_t x) { return std::popcount(x); }

std::vector<std::pair<int, int>> pair_list(size_t n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < int(n); ++i)
        for (int j = i + 1; j < int(n); ++j) edges.push_back({i, j});
    return edges;
}

}  // namespace

void FlatLattice::finish(const char* what) {
    std::sort(flats_.begin(), flats_.end());
    flats_.erase(std::unique(flats_.begin(), flats_.end()), flats_.end());
    size_t m = flats_.size();
    if (m == 0) throw error(std::string(what) + ": no flats");
    std::vector<size_t> order(m);
    for (size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        int pa = popcount(flats_[a]), pb = popcount(flats_[b]);
        if (pa != pb) return pa < pb;
        return flats_[a] < flats_[b];
    });
    std::vector<uint32_t> sorted;
    for (auto i : order) sorted.push_back(flats_[i]);
    flats_ = std::move(sorted);

    auto leq_set = [&](uint32_t a, uint32_t b) { return (a & ~b) == 0; };
    bottom_ = 0;
    top_ = m - 1;
    for (size_t i = 0; i < m; ++i) {
        if (!leq_set(flats_[bottom_], flats_[i]) || !leq_set(flats_[i], flats_[top_]))
            throw error(std::string(what) + ": not a bounded lattice");
    }

    // Height ranks; flats_ is sorted by popcount so inclusions point backwards.
    rank_.assign(m, 0);
    for (size_t i = 0; i < m; ++i) {
        int r = 0;
        for (size_t jj = 0; jj < i; ++jj)
            if (leq_set(flats_[jj], flats_[i]) && flats_[jj] != flats_[i])
                r = std::max(r, rank_[jj] + 1);
        rank_[i] = r;
    }

    join_.assign(m, std::vector<FlatId>(m));
    meet_.assign(m, std::vector<FlatId>(m));
    std::map<uint32_t, FlatId> index;
    for (size_t i = 0; i < m; ++i) index[flats_[i]] = i;
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a; b < m; ++b) {
            uint32_t u = flats_[a] | flats_[b];
            FlatId best = top_;
            for (size_t i = 0; i < m; ++i)
                if (leq_set(u, flats_[i]) && leq_set(flats_[i], flats_[best])) best = i;
            if (!leq_set(u, flats_[best])) throw error(std::string(what) + ": join undefined");
            join_[a][b] = join_[b][a] = best;
            auto it = index.find(flats_[a] & flats_[b]);
            if (it == index.end())
                throw error(std::string(what) + ": flats not closed under intersection");
            meet_[a][b] = meet_[b][a] = it->second;
        }
    // Least-upper-bound property of the join.
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a; b < m; ++b)
            for (size_t c = 0; c < m; ++c)
                if (leq_set(flats_[a], flats_[c]) && leq_set(flats_[b], flats_[c]) &&
                    !leq_set(flats_[join_[a][b]], flats_[c]))
                    throw error(std::string(what) + ": join is not a least upper bound");
    // Geometric lattice: semimodular rank, atoms generate.
    for (size_t a = 0; a < m; ++a)
        for (size_t b = a; b < m; ++b)
            if (rank_[join_[a][b]] + rank_[meet_[a][b]] > rank_[a] + rank_[b])
                throw error(std::string(what) + ": rank is not semimodular");
    for (size_t i = 0; i < m; ++i) {
        FlatId acc = bottom_;
        for (size_t a = 0; a < m; ++a)
            if (rank_[a] == 1 && leq_set(flats_[a], flats_[i])) acc = join_[acc][a];
        if (acc != i) throw error(std::string(what) + ": atoms do not generate");
    }
}

FlatLattice FlatLattice::from_arrangement(const std::vector<VecQ>& normals) {
    if (normals.empty()) throw error("empty arrangement");
    for (auto& v : normals)
        if (is_zero(v)) throw error("zero normal in arrangement");
    size_t n = normals.size();
    if (n > 31) throw error("arrangement too large");
    auto closure = [&](uint32_t s) {
        MatQ m;
        for (size_t i = 0; i < n; ++i)
            if ((s >> i) & 1) m.rows.push_back(normals[i]);
        size_t base = wt::rank(m);
        uint32_t out = 0;
        for (size_t i = 0; i < n; ++i) {
            MatQ m2 = m;
            m2.rows.push_back(normals[i]);
            if (wt::rank(m2) == base) out |= uint32_t(1) << i;
        }
        return out;
    };
    std::set<uint32_t> flats;
    std::vector<uint32_t> work = {closure(0)};
    flats.insert(work[0]);
    while (!work.empty()) {
        uint32_t f = work.back();
        work.pop_back();
        for (size_t i = 0; i < n; ++i) {
            if ((f >> i) & 1) continue;
            uint32_t c = closure(f | (uint32_t(1) << i));
            if (!flats.count(c)) {
                flats.insert(c);
                work.push_back(c);
            }
        }
    }
    FlatLattice l;
    l.ground_ = n;
    l.flats_.assign(flats.begin(), flats.end());
    l.finish("arrangement lattice");
    return l;
}

FlatLattice FlatLattice::partition_lattice(size_t n) {
    if (n < 1) throw error("partition lattice needs n >= 1");
    auto edges = pair_list(n);
    if (edges.size() > 31) throw error("partition lattice too large");
    std::set<uint32_t> flats;
    std::vector<int> a(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t pos, int maxb) {
        if (pos == n) {
            uint32_t f = 0;
            for (size_t e = 0; e < edges.size(); ++e)
                if (a[size_t(edges[e].first)] == a[size_t(edges[e].second)]) f |= uint32_t(1) << e;
            flats.insert(f);
            return;
        }
        for (int b = 0; b <= maxb + 1; ++b) {
            a[pos] = b;
            rec(pos + 1, std::max(maxb, b));
        }
    };
    rec(0, -1);
    FlatLattice l;
    l.ground_ = edges.size();
    l.flats_.assign(flats.begin(), flats.end());
    l.finish("partition lattice");
    return l;
}

FlatLattice FlatLattice::boolean_lattice(size_t n) {
    if (n < 1 || n > 20) throw error("boolean lattice size out of range");
    FlatLattice l;
    l.ground_ = n;
    for (uint32_t s = 0; s < (uint32_t(1) << n); ++s) l.flats_.push_back(s);
    l.finish("boolean lattice");
    return l;
}

FlatLattice FlatLattice::uniform_lattice(size_t rank, size_t n) {
    if (rank < 1 || rank > n) throw error("uniform lattice needs 1 <= rank <= n");
    FlatLattice l;
    l.ground_ = n;
    for (uint32_t s = 0; s < (uint32_t(1) << n); ++s)
        if (size_t(popcount(s)) < rank) l.flats_.push_back(s);
    l.flats_.push_back((uint32_t(1) << n) - 1);
    l.finish("uniform lattice");
    return l;
}

FlatLattice FlatLattice::from_flats(size_t ground, std::vector<uint32_t> flats) {
    if (ground > 31) throw error("ground set too large");
    FlatLattice l;
    l.ground_ = ground;
    l.flats_ = std::move(flats);
    l.finish("lattice");
    return l;
}

std::optional<FlatId> FlatLattice::find(uint32_t set) const {
    for (size_t i = 0; i < flats_.size(); ++i)
        if (flats_[i] == set) return i;
    return std::nullopt;
}

FlatId FlatLattice::closure(uint32_t set) const {
    FlatId best = top_;
    for (size_t i = 0; i < flats_.size(); ++i)
        if ((set & ~flats_[i]) == 0 && (flats_[i] & ~flats_[best]) == 0) best = i;
    return best;
}

std::vector<FlatId> FlatLattice::atoms() const {
    std::vector<FlatId> out;
    for (size_t i = 0; i < flats_.size(); ++i)
        if (rank_[i] == 1) out.push_back(i);
    return out;
}

std::vector<FlatId> FlatLattice::interval(FlatId lo, FlatId hi) const {
    std::vector<FlatId> out;
    for (size_t i = 0; i < flats_.size(); ++i)
        if (leq(lo, i) && leq(i, hi)) out.push_back(i);
    return out;
}

uint32_t FlatLattice::partition_to_edges(const std::vector<std::vector<int>>& blocks, size_t n) {
    auto edges = pair_list(n);
    std::vector<int> label(n, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int x : blocks[b]) {
            if (x < 1 || size_t(x) > n) throw error("partition element out of range");
            label[size_t(x - 1)] = int(b);
        }
    uint32_t f = 0;
    for (size_t e = 0; e < edges.size(); ++e) {
        int a = label[size_t(edges[e].first)], b = label[size_t(edges[e].second)];
        if (a >= 0 && a == b) f |= uint32_t(1) << e;
    }
    return f;
}

std::vector<std::vector<int>> FlatLattice::edges_to_partition(uint32_t edges_set, size_t n) const {
    auto edges = pair_list(n);
    std::vector<int> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = int(i);
    std::function<int(int)> find_root = [&](int a) {
        return parent[a] == a ? a : parent[a] = find_root(parent[a]);
    };
    for (size_t e = 0; e < edges.size(); ++e)
        if ((edges_set >> e) & 1) parent[find_root(edges[e].first)] = find_root(edges[e].second);
    std::map<int, std::vector<int>> blocks;
    for (size_t i = 0; i < n; ++i) blocks[find_root(int(i))].push_back(int(i) + 1);
    std::vector<std::vector<int>> out;
    for (auto& [r, b] : blocks) out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<bool, std::optional<FlatId>> is_building_set_interval(const FlatLattice& l,
                                                                const std::vector<FlatId>& b,
                                                                FlatId lo, FlatId hi) {
    for (auto m : b)
        if (!l.leq(lo, m) || !l.leq(m, hi) || m == lo)
            throw error("building-set member outside the interval");
    for (FlatId x : l.interval(lo, hi)) {
        if (x == lo) continue;
        std::vector<FlatId> below;
        for (auto m : b)
            if (l.leq(m, x)) below.push_back(m);
        std::vector<FlatId> factors;
        for (auto m : below) {
            bool maximal = true;
            for (auto m2 : below)
                if (m2 != m && l.lt(m, m2)) { maximal = false; break; }
            if (maximal && std::find(factors.begin(), factors.end(), m) == factors.end())
                factors.push_back(m);
        }
        auto ival = l.interval(lo, x);
        size_t prod = 1;
        bool oversize = false;
        std::vector<std::vector<FlatId>> fivals;
        for (auto fm : factors) {
            fivals.push_back(l.interval(lo, fm));
            prod *= fivals.back().size();
            if (prod > ival.size()) { oversize = true; break; }
        }
        if (oversize || prod != ival.size()) return {false, x};
        std::vector<std::vector<FlatId>> tuples = {{}};
        for (auto& fi : fivals) {
            std::vector<std::vector<FlatId>> next;
            for (auto& t : tuples)
                for (auto v : fi) {
                    auto t2 = t;
                    t2.push_back(v);
                    next.push_back(t2);
                }
            tuples = std::move(next);
        }
        auto join_tuple = [&](const std::vector<FlatId>& t) {
            FlatId j = lo;
            for (auto v : t) j = l.join(j, v);
            return j;
        };
        std::set<FlatId> image;
        for (auto& t : tuples) image.insert(join_tuple(t));
        if (image.size() != ival.size()) return {false, x};
        for (size_t a = 0; a < tuples.size(); ++a)
            for (size_t c = 0; c < tuples.size(); ++c) {
                bool le = true;
                for (size_t i = 0; i < tuples[a].size(); ++i)
                    if (!l.leq(tuples[a][i], tuples[c][i])) { le = false; break; }
                bool je = l.leq(join_tuple(tuples[a]), join_tuple(tuples[c]));
                if (le != je) return {false, x};
            }
    }
    return {true, std::nullopt};
}

std::pair<bool, std::optional<FlatId>> is_building_set(const FlatLattice& l,
                                                       const std::vector<FlatId>& b) {
    return is_building_set_interval(l, b, l.bottom(), l.top());
}

std::vector<FlatId> minimal_building_set(const FlatLattice& l) {
    // F belongs iff its lower interval is not a nontrivial product, i.e. no
    // proper flat below F splits the rank additively against its complement.
    std::vector<FlatId> out;
    for (size_t f = 0; f < l.size(); ++f) {
        if (f == l.bottom()) continue;
        bool connected = true;
        for (FlatId a : l.interval(l.bottom(), f)) {
            if (a == l.bottom() || a == f) continue;
            uint32_t rest = l.flat(f) & ~l.flat(a);
            FlatId crest = l.closure(rest);
            if (l.rank(a) + l.rank(crest) == l.rank(f)) { connected = false; break; }
        }
        if (connected) out.push_back(f);
    }
    return out;
}

std::vector<FlatId> maximal_building_set(const FlatLattice& l) {
    std::vector<FlatId> out;
    for (size_t f = 0; f < l.size(); ++f)
        if (f != l.bottom()) out.push_back(f);
    return out;
}

bool is_nested(const FlatLattice& l, const std::vector<FlatId>& members,
               const std::vector<FlatId>& subset) {
    std::set<FlatId> mem(members.begin(), members.end());
    size_t k = subset.size();
    if (k < 2) return true;
    for (uint32_t mask = 1; mask < (uint32_t(1) << k); ++mask) {
        if (popcount(mask) < 2) continue;
        std::vector<FlatId> sel;
        for (size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1) sel.push_back(subset[i]);
        bool antichain = true;
        for (size_t a = 0; a < sel.size() && antichain; ++a)
            for (size_t c = a + 1; c < sel.size(); ++c)
                if (!l.incomparable(sel[a], sel[c])) { antichain = false; break; }
        if (!antichain) continue;
        FlatId j = l.bottom();
        for (auto v : sel) j = l.join(j, v);
        if (mem.count(j)) return false;
    }
    return true;
}

namespace {

NestedComplex build_nested_complex(const FlatLattice& l, const std::vector<FlatId>& members) {
    NestedComplex n;
    for (auto m : members) {
        bool maximal = true;
        for (auto m2 : members)
            if (m2 != m && l.lt(m, m2)) { maximal = false; break; }
        if (!maximal) n.vertices.push_back(m);
    }
    std::sort(n.vertices.begin(), n.vertices.end());
    n.vertices.erase(std::unique(n.vertices.begin(), n.vertices.end()), n.vertices.end());
    n.faces.push_back({});
    size_t begin = 0, end = 1;
    while (begin < end) {
        for (size_t fi = begin; fi < end; ++fi) {
            std::vector<FlatId> face = n.faces[fi];
            for (auto v : n.vertices) {
                if (!face.empty() && v <= face.back()) continue;
                auto cand = face;
                cand.push_back(v);
                if (is_nested(l, members, cand)) n.faces.push_back(cand);
            }
        }
        begin = end;
        end = n.faces.size();
    }
    std::sort(n.faces.begin(), n.faces.end());
    return n;
}

}  // namespace

NestedComplex nested_set_complex(const FlatLattice& l, const std::vector<FlatId>& members) {
    auto [ok, witness] = is_building_set(l, members);
    if (!ok) throw error("not a building set");
    return build_nested_complex(l, members);
}

NestedComplex link(const FlatLattice& l, const std::vector<FlatId>& members,
                   const NestedComplex& n, FlatId f) {
    if (std::find(members.begin(), members.end(), f) == members.end())
        throw error("link flat is not a member");
    NestedComplex out;
    std::set<FlatId> vs;
    for (auto& face : n.faces) {
        if (std::find(face.begin(), face.end(), f) != face.end()) continue;
        auto plus = face;
        plus.push_back(f);
        std::sort(plus.begin(), plus.end());
        if (!is_nested(l, members, plus)) continue;
        out.faces.push_back(face);
        for (auto v : face) vs.insert(v);
    }
    out.vertices.assign(vs.begin(), vs.end());
    std::sort(out.faces.begin(), out.faces.end());
    return out;
}

RestrictContract restrict_contract(const FlatLattice& l, const std::vector<FlatId>& members,
                                   FlatId f) {
    if (std::find(members.begin(), members.end(), f) == members.end())
        throw error("flat is not a member");
    RestrictContract rc;
    std::set<FlatId> mem(members.begin(), members.end());
    std::set<FlatId> con;
    for (auto m : members) {
        if (l.leq(m, f)) {
            rc.b_res.push_back(m);
        } else {
            FlatId j = l.join(m, f);
            con.insert(j);
            if (l.lt(f, m)) {
                if (std::find(rc.part1.begin(), rc.part1.end(), m) == rc.part1.end())
                    rc.part1.push_back(m);
            } else if (l.incomparable(m, f) && !mem.count(j)) {
                if (std::find(rc.part2.begin(), rc.part2.end(), j) == rc.part2.end())
                    rc.part2.push_back(j);
            }
        }
    }
    rc.b_con.assign(con.begin(), con.end());
    std::sort(rc.b_res.begin(), rc.b_res.end());
    std::sort(rc.part1.begin(), rc.part1.end());
    std::sort(rc.part2.begin(), rc.part2.end());
    return rc;
}

FlatId tau(const FlatLattice& l, const std::vector<FlatId>& members, FlatId f, FlatId x) {
    if (std::find(members.begin(), members.end(), x) == members.end())
        throw error("tau argument is not a member");
    if (l.lt(x, f) || l.lt(f, x)) return x;
    if (l.incomparable(x, f)) return l.join(x, f);
    throw error("tau argument equals the link flat");
}

VerificationReport verify_product_theorem(const FlatLattice& l, const std::vector<FlatId>& members,
                                          FlatId f) {
    VerificationReport rep;
    auto [ok, witness] = is_building_set(l, members);
    if (!ok) throw error("not a building set");

    auto rc = restrict_contract(l, members, f);
    {
        std::vector<FlatId> uni = rc.part1;
        uni.insert(uni.end(), rc.part2.begin(), rc.part2.end());
        std::sort(uni.begin(), uni.end());
        bool disjoint = std::adjacent_find(uni.begin(), uni.end()) == uni.end();
        rep.add("contraction partition is disjoint", disjoint);
        rep.add("contraction partition covers B_F", uni == rc.b_con);
    }
    {
        bool unique = true;
        for (auto y : rc.part2) {
            size_t count = 0;
            for (auto m : members)
                if (l.incomparable(m, f) && l.join(m, f) == y) ++count;
            if (count != 1) unique = false;
        }
        rep.add("joins into (B_F)_2 have unique preimages", unique);
    }
    {
        auto [okr, wr] = is_building_set_interval(l, rc.b_res, l.bottom(), f);
        rep.add("B^F is a building set of [0,F]", okr);
        auto [okc, wc] = is_building_set_interval(l, rc.b_con, f, l.top());
        rep.add("B_F is a building set of [F,1]", okc);
    }

    NestedComplex n = build_nested_complex(l, members);
    NestedComplex lk = link(l, members, n, f);
    NestedComplex nres = build_nested_complex(l, rc.b_res);
    NestedComplex ncon = build_nested_complex(l, rc.b_con);

    std::vector<FlatId> b0;
    for (auto& face : lk.faces)
        if (face.size() == 1) b0.push_back(face[0]);
    std::sort(b0.begin(), b0.end());

    std::vector<FlatId> image;
    bool welldef = true;
    for (auto x : b0) {
        FlatId t = tau(l, members, f, x);
        image.push_back(t);
        bool in_res = std::binary_search(nres.vertices.begin(), nres.vertices.end(), t);
        bool in_con = std::binary_search(ncon.vertices.begin(), ncon.vertices.end(), t);
        if (in_res == in_con) welldef = false;
    }
    std::sort(image.begin(), image.end());
    bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
    std::vector<FlatId> target = nres.vertices;
    target.insert(target.end(), ncon.vertices.begin(), ncon.vertices.end());
    std::sort(target.begin(), target.end());
    rep.add("tau maps link vertices into the two vertex sets", welldef);
    rep.add("tau is a vertex bijection", injective && image == target,
            std::to_string(b0.size()) + " link vertices vs " + std::to_string(target.size()));

    std::set<std::vector<FlatId>> res_faces(nres.faces.begin(), nres.faces.end());
    std::set<std::vector<FlatId>> con_faces(ncon.faces.begin(), ncon.faces.end());
    std::set<std::vector<FlatId>> link_faces(lk.faces.begin(), lk.faces.end());
    bool forward = true;
    std::set<std::vector<FlatId>> forward_image;
    for (auto& face : lk.faces) {
        std::vector<FlatId> a, c;
        for (auto x : face) {
            FlatId t = tau(l, members, f, x);
            if (std::binary_search(nres.vertices.begin(), nres.vertices.end(), t)) a.push_back(t);
            else c.push_back(t);
        }
        std::sort(a.begin(), a.end());
        std::sort(c.begin(), c.end());
        if (!res_faces.count(a) || !con_faces.count(c)) forward = false;
        std::vector<FlatId> key = a;
        key.push_back(~FlatId(0));
        key.insert(key.end(), c.begin(), c.end());
        forward_image.insert(key);
    }
    rep.add("tau sends link faces into the product complex", forward);
    rep.add("tau is injective on faces", forward_image.size() == lk.faces.size());
    size_t product_count = nres.faces.size() * ncon.faces.size();
    rep.add("face counts match the product", lk.faces.size() == product_count,
            std::to_string(lk.faces.size()) + " vs " + std::to_string(product_count));

    std::map<FlatId, FlatId> preimage2;
    for (auto m : members)
        if (l.incomparable(m, f)) preimage2[l.join(m, f)] = m;
    bool backward = true;
    for (auto& a : nres.faces)
        for (auto& c : ncon.faces) {
            std::vector<FlatId> pull = a;
            for (auto y : c) {
                if (std::binary_search(rc.part1.begin(), rc.part1.end(), y)) pull.push_back(y);
                else pull.push_back(preimage2.at(y));
            }
            std::sort(pull.begin(), pull.end());
            if (!link_faces.count(pull)) backward = false;
        }
    rep.add("every product face pulls back to a link face", backward);
    return rep;
}

std::string partition_string(const FlatLattice& l, FlatId f, size_t n) {
    auto blocks = l.edges_to_partition(l.flat(f), n);
    std::ostringstream os;
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (b) os << "|";
        for (int x : blocks[b]) os << x;
    }
    return os.str();
}

std::optional<FlatId> parse_partition_flat(const FlatLattice& l, const std::string& s, size_t n) {
    std::vector<std::vector<int>> blocks(1);
    for (char ch : s) {
        if (ch == '|') {
            blocks.push_back({});
        } else if (ch >= '1' && ch <= '9') {
            blocks.back().push_back(ch - '0');
        } else if (!std::isspace((unsigned char)ch)) {
            return std::nullopt;
        }
    }
    uint32_t edges = FlatLattice::partition_to_edges(blocks, n);
    return l.find(edges);
}

}  // namespace wt
