#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "qdilog/quiver.hpp"

using namespace qdilog;

namespace {

using Arrow = std::tuple<int, int, int>;

const Quiver a2(2, {{0, 1, 1}});
const Quiver a3(3, {{0, 1, 1}, {1, 2, 1}});
const Quiver kron(2, {{0, 1, 2}});

// Vertex i' of a framed quiver on n vertices is index n + i.
std::set<Arrow> arrows_of(const FramedQuiver& f) {
  auto l = f.arrow_list();
  return {l.begin(), l.end()};
}

FramedQuiver run(const Quiver& q, const std::vector<int>& seq) { return run_sequence(frame(q), seq).final_quiver; }

std::vector<std::vector<int>> vertex_lists(const std::vector<GreenSeq>& gs) {
  std::vector<std::vector<int>> out;
  for (const auto& g : gs) out.push_back(g.vertices());
  return out;
}

void expect_equal(const Series& a, const Series& b) {
  auto d = a.first_difference(b);
  if (!d) return;
  std::string e;
  for (int x : d->exponent) e += (e.empty() ? "" : ",") + std::to_string(x);
  ADD_FAILURE() << "differ at y^(" << e << "): " << d->lhs << " vs " << d->rhs;
}

// Breadth-first oracle for maximal green sequences: no path bookkeeping,
// just every green continuation up to max_len.
std::set<std::vector<int>> bfs_maximal(const Quiver& q, int max_len) {
  std::set<std::vector<int>> out;
  std::deque<std::pair<std::vector<int>, FramedQuiver>> queue{{{}, frame(q)}};
  while (!queue.empty()) {
    auto [seq, f] = queue.front();
    queue.pop_front();
    const int n = f.size();
    bool any_green = false;
    for (int k = 0; k < n; ++k) {
      // green: no frozen vertex has an arrow into k
      bool green = true;
      for (int j = 0; j < n; ++j) green &= f.at(n + j, k) <= 0;
      if (!green) continue;
      any_green = true;
      if (static_cast<int>(seq.size()) == max_len) continue;
      auto next = seq;
      next.push_back(k);
      queue.emplace_back(next, mutate(f, k));
    }
    if (!any_green && !seq.empty()) out.insert(seq);
  }
  return out;
}

// Every framed quiver reachable by at most `depth` mutations.
std::set<FramedQuiver> reachable(const Quiver& q, int depth) {
  std::set<FramedQuiver> seen{frame(q)};
  std::vector<FramedQuiver> layer{frame(q)};
  for (int d = 0; d < depth; ++d) {
    std::vector<FramedQuiver> next;
    for (const auto& f : layer)
      for (int k = 0; k < f.size(); ++k) {
        FramedQuiver g = mutate(f, k);
        if (seen.insert(g).second) next.push_back(g);
      }
    layer = std::move(next);
  }
  return seen;
}

// Visits every vertex sequence of length <= L, checking each c-vector on the way.
int count_sign_coherent(const FramedQuiver& f, int L) {
  int visited = 1;
  if (L == 0) return visited;
  for (int k = 0; k < f.size(); ++k) {
    const CVector c = c_vector(f, k);
    for (int x : c.beta) EXPECT_GE(x * c.eps, 0);
    visited += count_sign_coherent(mutate(f, k), L - 1);
  }
  return visited;
}

}  // namespace

TEST(Frame, A2) {
  EXPECT_EQ(arrows_of(frame(a2)), (std::set<Arrow>{{0, 1, 1}, {0, 2, 1}, {1, 3, 1}}));
  EXPECT_EQ(arrows_of(frame(Quiver(1))), (std::set<Arrow>{{0, 1, 1}}));
  const FramedQuiver k = frame(kron);
  EXPECT_EQ(k.at(0, 1), 2);
  EXPECT_EQ(k.at(0, 2), 1);
  EXPECT_EQ(k.at(1, 3), 1);
  EXPECT_EQ(k.mutable_part(), kron);
  EXPECT_THROW(frame(Quiver(2, {{0, 1, 1}, {1, 0, 1}})), DomainError);
}

TEST(Mutate, A2LeftBranch) {
  const FramedQuiver f1 = mutate(frame(a2), 0);
  EXPECT_EQ(arrows_of(f1), (std::set<Arrow>{{1, 0, 1}, {2, 0, 1}, {1, 3, 1}}));
  EXPECT_FALSE(is_green(f1, 0));
  EXPECT_TRUE(is_green(f1, 1));
  const FramedQuiver f2 = mutate(f1, 1);
  EXPECT_EQ(arrows_of(f2), (std::set<Arrow>{{0, 1, 1}, {2, 0, 1}, {3, 1, 1}}));
  EXPECT_TRUE(all_red(f2));
}

TEST(Mutate, A2RightBranch) {
  const FramedQuiver f1 = mutate(frame(a2), 1);
  EXPECT_EQ(arrows_of(f1), (std::set<Arrow>{{1, 0, 1}, {0, 2, 1}, {0, 3, 1}, {3, 1, 1}}));
  EXPECT_TRUE(is_green(f1, 0));
  EXPECT_FALSE(is_green(f1, 1));
  const FramedQuiver f2 = mutate(f1, 0);
  EXPECT_EQ(arrows_of(f2), (std::set<Arrow>{{0, 1, 1}, {2, 0, 1}, {3, 0, 1}, {1, 2, 1}}));
  EXPECT_FALSE(is_green(f2, 0));
  EXPECT_TRUE(is_green(f2, 1));
  const FramedQuiver f3 = mutate(f2, 1);
  EXPECT_EQ(arrows_of(f3), (std::set<Arrow>{{1, 0, 1}, {3, 0, 1}, {2, 1, 1}}));
  EXPECT_TRUE(all_red(f3));
}

TEST(Mutate, FrozenVertexIsRejected) {
  EXPECT_THROW(mutate(frame(a2), 2), DomainError);
  EXPECT_THROW(c_vector(frame(a2), 3), DomainError);
}

TEST(Mutate, IsAnInvolutionOnReachableQuivers) {
  const std::vector<Quiver> dynkin{a2, a3, Quiver(3, {{1, 0, 1}, {1, 2, 1}}), Quiver(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}),
                                   Quiver(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}})};
  for (const Quiver& q : dynkin) {
    const auto states = reachable(q, 8);
    EXPECT_GT(states.size(), 1u);
    for (const auto& f : states)
      for (int k = 0; k < f.size(); ++k) EXPECT_EQ(mutate(mutate(f, k), k), f);
  }
}

TEST(CVector, Examples) {
  for (int k = 0; k < 2; ++k) EXPECT_EQ(c_vector(frame(a2), k), (CVector{unit_vec(2, k), 1}));
  EXPECT_EQ(c_vector(run(a2, {0}), 0), (CVector{{-1, 0}, -1}));
  EXPECT_EQ(c_vector(run(a2, {1, 0}), 1), (CVector{{1, 0}, 1}));
}

TEST(CVector, MixedSignsAreReported) {
  // A frozen row (1, -1) is not sign coherent.
  const FramedQuiver bad(2, {0, 0, 1, -1,  //
                             0, 0, 0, 1,   //
                             -1, 0, 0, 0,  //
                             1, -1, 0, 0});
  try {
    c_vector(bad, 0);
    FAIL() << "expected a sign coherence violation";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), "sign_coherence_violation");
  }
}

TEST(SignCoherence, AllSequencesToLengthTen) {
  EXPECT_EQ(count_sign_coherent(frame(a2), 10), 2047);
  EXPECT_EQ(count_sign_coherent(frame(kron), 10), 2047);
  EXPECT_EQ(count_sign_coherent(frame(a3), 10), 88573);
}

TEST(SignCoherence, GreenSequencesToLengthTwelve) {
  const std::vector<Quiver> quivers{Quiver(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}), Quiver(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}}),
                                    Quiver(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}), Quiver(3, {{0, 1, 2}, {1, 2, 2}})};
  for (const Quiver& q : quivers) {
    const auto all = green_search(frame(q), 12, false);
    EXPECT_FALSE(all.empty());
    for (const auto& g : all)
      for (const auto& s : g.steps)
        for (int x : s.beta) EXPECT_GE(x * s.eps, 0);
  }
}

TEST(GreenSearch, A2MaximalSequences) {
  const auto found = green_search(frame(a2), 6, true);
  EXPECT_EQ(vertex_lists(found), (std::vector<std::vector<int>>{{0, 1}, {1, 0, 1}}));
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[1].steps[1].beta, (ExpVec{1, 1}));
  EXPECT_EQ(found[1].steps[2].beta, (ExpVec{1, 0}));
  for (const auto& g : found)
    for (const auto& s : g.steps) EXPECT_EQ(s.eps, 1);
}

TEST(GreenSearch, A2AllGreenSequences) {
  EXPECT_EQ(vertex_lists(green_search(frame(a2), 6, false)),
            (std::vector<std::vector<int>>{{0}, {0, 1}, {1}, {1, 0}, {1, 0, 1}}));
  EXPECT_TRUE(green_search(frame(a2), 0, false).empty());
}

TEST(GreenSearch, SingleVertex) {
  EXPECT_EQ(vertex_lists(green_search(frame(Quiver(1)), 4, true)), (std::vector<std::vector<int>>{{0}}));
}

TEST(GreenSearch, MatchesBreadthFirstOracle) {
  for (const Quiver& q : {a3, Quiver(3, {{1, 0, 1}, {1, 2, 1}}), Quiver(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}})}) {
    const auto found = vertex_lists(green_search(frame(q), 12, true));
    const std::set<std::vector<int>> as_set(found.begin(), found.end());
    EXPECT_EQ(as_set.size(), found.size());
    EXPECT_TRUE(std::is_sorted(found.begin(), found.end()));
    EXPECT_EQ(as_set, bfs_maximal(q, 12));
  }
}

TEST(GreenSearch, KroneckerHasOnlyTheTwoStepSequence) {
  // The other green branch never ends; the bound cuts it off.
  EXPECT_EQ(vertex_lists(green_search(frame(kron), 8, true)), (std::vector<std::vector<int>>{{0, 1}}));
}

TEST(TropicalE, A2Examples) {
  const SkewForm f = a2_form();
  const int D = 8;
  expect_equal(tropical_E(frame(a2), {0, 1}, D), eval_word(f, {{1, 1, {1, 0}}, {1, 1, {0, 1}}}, D));
  expect_equal(tropical_E(frame(a2), {1, 0, 1}, D), eval_word(f, {{1, 1, {0, 1}}, {1, 1, {1, 1}}, {1, 1, {1, 0}}}, D));
  const Series e121 = tropical_E(frame(a2), {0, 1, 0}, D);
  expect_equal(e121, eval_word(f, {{1, 1, {1, 0}}, {1, 1, {0, 1}}, {-1, 1, {1, 0}}}, D));
  expect_equal(e121, eval_word(f, {{1, 1, {0, 1}}, {1, 1, {1, 1}}}, D));
  expect_equal(tropical_E(frame(a2), {0, 1}, D), tropical_E(frame(a2), {1, 0, 1}, D));
}

TEST(FrozenIso, Examples) {
  const FramedQuiver f = frame(a2);
  EXPECT_EQ(frozen_iso(f, f), (std::vector<int>{0, 1}));
  EXPECT_EQ(frozen_iso(run(a2, {0, 1}), run(a2, {1, 0, 1})), (std::vector<int>{1, 0}));
  EXPECT_FALSE(frozen_iso(run(a2, {0, 1}), f).has_value());
  EXPECT_FALSE(frozen_iso(f, frame(a3)).has_value());
}

TEST(TropicalE, EqualOnFrozenIsomorphicEndpoints) {
  // All vertex sequences up to length L, grouped by endpoint up to a frozen
  // isomorphism; E(k) is built incrementally along the search tree.
  struct Case {
    Quiver q;
    int L;
  };
  const int D = 6;
  for (const Case& c : {Case{a2, 8}, Case{kron, 8}, Case{a3, 8}, Case{Quiver(3, {{1, 0, 1}, {1, 2, 1}}), 6},
                        Case{Quiver(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}), 6}}) {
    const FramedQuiver start = frame(c.q);
    const SkewForm form = skew_from_quiver(c.q);
    const int n = c.q.size();
    std::map<std::pair<ExpVec, int>, Series> factors;
    auto factor = [&](const ExpVec& beta, int eps) -> const Series& {
      auto key = std::make_pair(beta, eps);
      auto it = factors.find(key);
      if (it == factors.end()) {
        Series e = dilog(form, 1, scaled(beta, eps), D);
        it = factors.emplace(key, eps == 1 ? e : e.inverse()).first;
      }
      return it->second;
    };
    // canonical key of a framed quiver up to permuting mutable vertices
    auto canonical = [&](const FramedQuiver& f) {
      std::vector<int> p(static_cast<std::size_t>(2 * n));
      std::iota(p.begin(), p.end(), 0);
      std::vector<int> best;
      do {
        std::vector<int> m;
        for (int i = 0; i < 2 * n; ++i)
          for (int j = 0; j < 2 * n; ++j) m.push_back(f.at(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]));
        if (best.empty() || m < best) best = m;
      } while (std::next_permutation(p.begin(), p.begin() + n));
      return best;
    };
    std::map<std::vector<int>, std::pair<FramedQuiver, Series>> classes;
    int pairs = 0;
    auto visit = [&](auto&& self, const FramedQuiver& f, const Series& e, int depth) -> void {
      auto [it, fresh] = classes.try_emplace(canonical(f), f, e);
      if (!fresh) {
        ASSERT_TRUE(frozen_iso(it->second.first, f).has_value());
        expect_equal(it->second.second, e);
        ++pairs;
      }
      if (depth == c.L) return;
      for (int k = 0; k < n; ++k) {
        const CVector cv = c_vector(f, k);
        self(self, mutate(f, k), e * factor(cv.beta, cv.eps), depth + 1);
      }
    };
    visit(visit, start, Series::unit(form, D), 0);
    EXPECT_GT(pairs, 0);
  }
}

TEST(TropicalE, LinearA3MaximalSequencesAgree) {
  const auto found = green_search(frame(a3), 12, true);
  ASSERT_GE(found.size(), 2u);
  const Series first = tropical_E(frame(a3), found.front().vertices(), 6);
  for (const auto& g : found) expect_equal(tropical_E(frame(a3), g.vertices(), 6), first);
}

TEST(DtInvariant, Examples) {
  const auto r = dt_invariant(a2, 6);
  EXPECT_EQ(r.sequence, (std::vector<int>{0, 1}));
  expect_equal(r.value, eval_word(a2_form(), {{1, 1, {1, 0}}, {1, 1, {0, 1}}}, 6));
  expect_equal(dt_invariant(Quiver(1), 6).value, dilog(SkewForm(1), 1, {1}, 6));
  const auto a = dt_invariant(a3, 5);
  for (const auto& g : green_search(frame(a3), 12, true)) expect_equal(tropical_E(frame(a3), g.vertices(), 5), a.value);
}

TEST(DtInvariant, ReportsWhenNothingIsFound) {
  try {
    dt_invariant(a2, 4, 1);
    FAIL() << "expected no sequence within depth 1";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), "no_maximal_green_sequence");
  }
}
