#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "deplist/dag.hpp"
#include "deplist/offline_opt.hpp"
#include "deplist/rng.hpp"
#include "deplist/verify.hpp"
#include "deplist/workloads.hpp"

using namespace deplist;

namespace {

// a=0, b=1, c=2 throughout
constexpr NodeId a = 0, b = 1, c = 2;

DependencyDag chain_abc() { return DependencyDag::build({a, b, c}, {{c, b}, {b, a}}); }

std::vector<ListState> all_permutations(const std::vector<NodeId>& nodes) {
  std::vector<NodeId> perm = nodes;
  std::sort(perm.begin(), perm.end());
  std::vector<ListState> out;
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("build validates") {
  DependencyDag dag = DependencyDag::build({a, b, c}, {{c, a}});
  CHECK(dag.node_count() == 3);
  CHECK(dag.edges() == std::vector<std::pair<NodeId, NodeId>>{{c, a}});

  try {
    DependencyDag::build({a, b}, {{a, b}, {b, a}});
    FAIL("2-cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cycle_detected);
  }

  CHECK(DependencyDag::build({a}, {}).edge_count() == 0);

  CHECK_THROWS_AS(DependencyDag::build({a, b}, {{a, c}}), Error);  // unknown endpoint
  CHECK_THROWS_AS(DependencyDag::build({a, b}, {{a, a}}), Error);  // self edge
  CHECK_THROWS_AS(DependencyDag::build({a, a}, {}), Error);        // duplicate node
}

TEST_CASE("reachable follows directed paths") {
  DependencyDag dag = chain_abc();
  CHECK(dag.reachable(c, a));
  CHECK_FALSE(dag.reachable(a, c));
  CHECK_FALSE(dag.reachable(a, a));
  CHECK_THROWS_AS(dag.reachable(a, 7), Error);
}

TEST_CASE("direct_dependency picks the furthest present dependency") {
  ListState list({a, b, c});
  SUBCASE("single dependency") {
    DependencyDag dag = DependencyDag::build({a, b, c}, {{c, a}});
    CHECK(dag.direct_dependency(list, c) == a);
  }
  SUBCASE("max position wins") {
    DependencyDag dag = DependencyDag::build({a, b, c}, {{c, a}, {c, b}});
    CHECK(dag.direct_dependency(list, c) == b);
  }
  SUBCASE("no dependencies") {
    DependencyDag dag = DependencyDag::build({a, b, c}, {{c, a}});
    CHECK_FALSE(dag.direct_dependency(list, b).has_value());
  }
  SUBCASE("absent dependencies are skipped") {
    DependencyDag dag = DependencyDag::build({a, b, c}, {{c, a}, {c, b}});
    ListState partial({a, c});
    CHECK(dag.direct_dependency(partial, c) == a);
  }
}

TEST_CASE("transitive closure and transitivity test") {
  DependencyDag dag = chain_abc();
  DependencyDag closed = dag.transitive_closure();
  CHECK(closed.edges() == std::vector<std::pair<NodeId, NodeId>>{{b, a}, {c, a}, {c, b}});
  CHECK(closed.transitive_closure() == closed);  // idempotent
  CHECK_FALSE(dag.is_transitive());
  CHECK(closed.is_transitive());
  DependencyDag empty = DependencyDag::build({a, b, c}, {});
  CHECK(empty.transitive_closure() == empty);
  CHECK(empty.is_transitive());
}

TEST_CASE("is_linear_extension") {
  DependencyDag dag = DependencyDag::build({a, b, c}, {{c, a}});
  CHECK(dag.is_linear_extension(ListState({a, b, c})));
  CHECK_FALSE(dag.is_linear_extension(ListState({c, b, a})));
  DependencyDag empty = DependencyDag::build({a, b, c}, {});
  for (const ListState& perm : all_permutations({a, b, c})) CHECK(empty.is_linear_extension(perm));
  CHECK_THROWS_AS(ListState({a, a, b}), Error);  // duplicates rejected upstream
}

TEST_CASE("mutation produces validated versions") {
  DependencyDag dag = DependencyDag::build({a, b}, {{b, a}});
  DependencyDag grown = dag.with_inserted(c, {b}, {});
  CHECK(grown.reachable(c, b));
  CHECK(grown.node_count() == 3);
  DependencyDag shrunk = grown.with_removed(b);
  CHECK(shrunk.node_count() == 2);
  CHECK_FALSE(shrunk.reachable(c, a));  // the path went through b
  // c after a yet before b contradicts b -> a
  CHECK_THROWS_AS(dag.with_inserted(c, {a}, {a}), Error);
  CHECK_THROWS_AS(dag.with_inserted(c, {b}, {a}), Error);
}

TEST_CASE("reachability is transitive" * doctest::test_suite("property")) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + rng.index(6);
    DependencyDag dag = random_dag(n, 0.4, rng);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        for (NodeId w = 0; w < n; ++w)
          if (u != v && v != w && u != w && dag.reachable(u, v) && dag.reachable(v, w))
            CHECK(dag.reachable(u, w));
  }
}

TEST_CASE("closure is idempotent" * doctest::test_suite("property")) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    DependencyDag dag = random_dag(2 + rng.index(6), 0.4, rng);
    DependencyDag closed = dag.transitive_closure();
    CHECK(closed.transitive_closure() == closed);
  }
}

TEST_CASE("edge test and closure test agree on full lists" * doctest::test_suite("property")) {
  // exhaustive for n <= 4, sampled heavily at n = 5
  for (int n = 1; n <= 4; ++n) {
    for (const DependencyDag& dag : all_dags(n)) {
      DependencyDag closed = dag.transitive_closure();
      for (const ListState& perm : all_permutations(dag.nodes()))
        CHECK(dag.is_linear_extension(perm) == closed.is_linear_extension(perm));
    }
  }
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    DependencyDag dag = random_dag(5, 0.15 + 0.5 * rng.unit(), rng);
    DependencyDag closed = dag.transitive_closure();
    for (const ListState& perm : all_permutations(dag.nodes()))
      CHECK(dag.is_linear_extension(perm) == closed.is_linear_extension(perm));
  }
}

TEST_CASE("every ancestor sits at or before the direct dependency" *
          doctest::test_suite("property")) {
  // the max-over-direct-edges sufficiency argument
  auto check_dag = [](const DependencyDag& dag) {
    for (const ListState& list : enumerate_linear_extensions(dag)) {
      for (NodeId y : dag.nodes()) {
        std::optional<NodeId> dep = dag.direct_dependency(list, y);
        if (!dep) continue;
        CHECK(list.position(*dep) < list.position(y));
        for (NodeId anc : dag.nodes())
          if (anc != y && dag.reachable(y, anc))
            CHECK(list.position(anc) <= list.position(*dep));
      }
    }
  };
  for (int n = 1; n <= 4; ++n)
    for (const DependencyDag& dag : all_dags(n)) check_dag(dag);
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) check_dag(random_dag(5, 0.4, rng));
}
