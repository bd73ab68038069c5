#include "fifosim/fifo_way_list.hpp"

#include <doctest.h>

#include <cstdint>
#include <deque>
#include <random>

#include "fifosim/engine.hpp"

using namespace fifosim;

TEST_CASE("cold list fills slots in cursor order without evicting") {
  FifoWayList<std::uint64_t> l(4);
  CHECK(l.occupied() == 0);
  CHECK(!l.mri_slot().has_value());
  CHECK(l.insert(10) == std::nullopt);
  CHECK(l.insert(11) == std::nullopt);
  CHECK(l.insert(12) == std::nullopt);
  CHECK(l.occupied() == 3);
  CHECK(l.cursor() == 3);
  CHECK(l.slot(0) == 10);
  CHECK(l.slot(1) == 11);
  CHECK(l.slot(2) == 12);
  CHECK(!l.slot_occupied(3));
  CHECK(l.mri_slot() == 2);
}

TEST_CASE("a full list evicts in insertion order") {
  FifoWayList<std::uint64_t> l(2);
  l.insert(1);
  l.insert(2);
  CHECK(l.insert(3) == 1);
  CHECK(l.insert(4) == 2);
  CHECK(l.insert(5) == 3);
  CHECK(l.contains(4));
  CHECK(l.contains(5));
  CHECK(!l.contains(3));
}

TEST_CASE("victim is the occupant the next insert evicts") {
  FifoWayList<int> l(3);
  l.insert(10);
  CHECK(!l.full());
  l.insert(11);
  CHECK(!l.full());
  l.insert(12);
  CHECK(l.full());
  CHECK(l.victim() == 10);
  CHECK(l.insert(13) == 10);
  CHECK(l.full());
  CHECK(l.victim() == 11);
}

TEST_CASE("lookups never disturb eviction order") {
  FifoWayList<int> l(2);
  l.insert(1);
  l.insert(2);
  CHECK(l.find(1) == 0);   // touched, but FIFO ignores touches
  CHECK(l.insert(3) == 1); // 1 still leaves first
}

TEST_CASE("mri slot sits one step behind the cursor") {
  FifoWayList<int> l(4);
  for (int i = 0; i < 11; ++i) {
    l.insert(i);
    CHECK(l.mri_slot() == (l.cursor() + 3) % 4);
    CHECK(l.slot(*l.mri_slot()) == i);
  }
}

TEST_CASE("list agrees with a deque model under random churn") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 50; ++round) {
    std::size_t cap = 1u << (1 + rng() % 4);  // 2..16 ways
    FifoWayList<std::uint64_t> l(cap);
    std::deque<std::uint64_t> model;  // front = oldest
    std::uint64_t next_val = 0;
    for (int step = 0; step < 300; ++step) {
      std::uint64_t v = next_val++;
      auto victim = l.insert(v);
      model.push_back(v);
      if (model.size() > cap) {
        CHECK(victim == model.front());
        model.pop_front();
      } else {
        CHECK(victim == std::nullopt);
      }
      CHECK(l.occupied() == model.size());
      for (auto m : model) CHECK(l.contains(m));
      REQUIRE(l.mri_slot().has_value());
      CHECK(l.slot(*l.mri_slot()) == model.back());
    }
  }
}

TEST_CASE("fifo distance counts slots from the cursor") {
  CHECK(fifo_distance(3, 3, 8) == 0);
  CHECK(fifo_distance(4, 3, 8) == 1);
  CHECK(fifo_distance(2, 3, 8) == 7);  // one behind the cursor = farthest from eviction
  CHECK(fifo_distance(6, 3, 8) == 3);
  CHECK(fifo_distance(0, 0, 2) == 0);
  CHECK(fifo_distance(1, 0, 2) == 1);
}

TEST_CASE("survival threshold per associativity") {
  CHECK(p1_threshold(2) == 1);
  CHECK(p1_threshold(4) == 5);
  CHECK(p1_threshold(8) == 13);
  CHECK(p1_threshold(16) == 29);
}
