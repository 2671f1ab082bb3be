#include "doctest.h"

#include <random>
#include <sstream>

#include "apportion/engine.hpp"
#include "apportion/error.hpp"
#include "apportion/records.hpp"
#include "oracles.hpp"

using namespace apportion;

namespace {

const std::vector<LimitOrder> kSeven{
    {1, Side::buy, 10, 100}, {2, Side::buy, 50, 100},  {3, Side::sell, 90, 100},
    {4, Side::buy, 20, 110}, {5, Side::sell, 10, 100}, {6, Side::sell, 40, 100},
    {7, Side::buy, 70, 100}};

std::vector<ExecutionReport> replay(OrderBook& book, const std::vector<LimitOrder>& orders,
                                    const MethodSpec& method) {
  std::vector<ExecutionReport> out;
  for (const auto& o : orders) out.push_back(submit_limit_order(book, o, method));
  return out;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("seven-order sequence with pro-rata") {
  OrderBook book;
  const auto reports = replay(book, kSeven, ProRata{});
  // order 3 takes both buys and rests the other 30
  CHECK(reports[2].fills == std::vector<Fill>{{1, 10}, {2, 50}});
  CHECK(reports[2].residual == 30);
  CHECK(reports[3].fills.empty());
  CHECK(reports[3].residual == 20);
  CHECK(reports[6].fills == std::vector<Fill>{{3, 27}, {5, 8}, {6, 35}});
  CHECK(reports[6].residual == 0);
  CHECK(book_snapshot(book) == std::vector<SnapshotEntry>{{3, Side::sell, 3, 100},
                                                          {5, Side::sell, 2, 100},
                                                          {6, Side::sell, 5, 100},
                                                          {4, Side::buy, 20, 110}});
}

TEST_CASE("seven-order sequence with Hamilton") {
  OrderBook book;
  const auto reports = replay(book, kSeven, LargestRemainder{Quota::hare});
  CHECK(reports[6].fills == std::vector<Fill>{{3, 26}, {5, 9}, {6, 35}});
  CHECK(book.resting_size(100, Side::sell) == 10);
  const auto snap = book_snapshot(book);
  CHECK(snap[0] == SnapshotEntry{3, Side::sell, 4, 100});
  CHECK(snap[1] == SnapshotEntry{5, Side::sell, 1, 100});
  CHECK(snap[2] == SnapshotEntry{6, Side::sell, 5, 100});
}

TEST_CASE("resting without liquidity") {
  OrderBook book;
  CHECK(book_snapshot(book).empty());
  const auto r = submit_limit_order(book, {4, Side::buy, 20, 110}, ProRata{});
  CHECK(r.fills.empty());
  CHECK(r.residual == 20);
  CHECK(book.resting_size(110, Side::buy) == 20);

  OrderBook two;
  replay(two, {kSeven[0], kSeven[1]}, ProRata{});
  CHECK(book_snapshot(two) ==
        std::vector<SnapshotEntry>{{1, Side::buy, 10, 100}, {2, Side::buy, 50, 100}});
}

TEST_CASE("exact sweep leaves nothing") {
  OrderBook book;
  replay(book, {{1, Side::sell, 5, 100}, {2, Side::sell, 5, 100}}, ProRata{});
  const auto r = submit_limit_order(book, {3, Side::buy, 10, 100}, ProRata{});
  CHECK(r.filled() == 10);
  CHECK(r.residual == 0);
  CHECK(book.empty());
}

TEST_CASE("invalid orders and methods leave the book unchanged") {
  OrderBook book;
  replay(book, {kSeven[0], kSeven[1], kSeven[2]}, ProRata{});
  const auto before = book_snapshot(book);
  auto code = [&](const LimitOrder& o, const MethodSpec& m) {
    try {
      submit_limit_order(book, o, m);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::overflow;
  };
  CHECK(code({9, Side::buy, 10, 100}, Rss{1}) == Errc::unsupported_method);
  CHECK(code({9, Side::buy, 0, 100}, ProRata{}) == Errc::invalid_order);
  CHECK(code({9, Side::buy, 5, 0}, ProRata{}) == Errc::invalid_order);
  CHECK(code({3, Side::buy, 5, 100}, ProRata{}) == Errc::invalid_order);
  // Droop fails on this split: Q = 1 + floor(80/71) = 2 leaves 30 units
  OrderBook droop;
  replay(droop, {{1, Side::sell, 30, 100}, {2, Side::sell, 10, 100}, {3, Side::sell, 40, 100}},
         ProRata{});
  const auto droop_before = book_snapshot(droop);
  CHECK_THROWS_AS(submit_limit_order(droop, {4, Side::buy, 70, 100}, LargestRemainder{Quota::droop}),
                  Error);
  CHECK(book_snapshot(droop) == droop_before);
  CHECK(book_snapshot(book) == before);
}

TEST_CASE("snapshot round-trips through the replay format") {
  OrderBook book;
  replay(book, kSeven, ProRata{});
  std::stringstream file;
  for (const auto& o : snapshot_as_replay(book_snapshot(book))) file << format_replay_line(o) << '\n';
  OrderBook again;
  replay(again, parse_replay(file), ProRata{});
  CHECK(book_snapshot(again) == book_snapshot(book));
}

TEST_CASE("random order flow keeps units and quota") {
  std::mt19937_64 rng(21);
  for (const MethodSpec m : {MethodSpec{ProRata{}}, MethodSpec{LargestRemainder{Quota::hare}},
                             MethodSpec{HighestAverages{DivisorRule::ws}}}) {
    OrderBook book;
    const bool quota = !std::holds_alternative<HighestAverages>(m);
    for (OrderId id = 1; id <= 3000; ++id) {
      const LimitOrder o{id, rng() % 2 ? Side::buy : Side::sell,
                         1 + static_cast<Units>(rng() % 40), 100 + static_cast<Price>(rng() % 3)};
      std::vector<Units> makers;
      for (const auto& e : book_snapshot(book)) {
        if (e.price == o.price && e.side == opposite(o.side)) makers.push_back(e.size);
      }
      const Units opposite_before = book.resting_size(o.price, opposite(o.side));
      const auto r = submit_limit_order(book, o, m);
      REQUIRE(r.filled() + r.residual == o.size);
      REQUIRE(opposite_before - book.resting_size(o.price, opposite(o.side)) == r.filled());
      REQUIRE(r.fills.size() == (r.fills.empty() ? 0 : makers.size()));
      for (std::size_t i = 0; i < r.fills.size(); ++i) REQUIRE(r.fills[i].units <= makers[i]);
      if (quota && r.residual == 0 && !r.fills.empty() && o.size < opposite_before) {
        std::vector<Units> split;
        for (const auto& f : r.fills) split.push_back(f.units);
        REQUIRE(oracle::within_quota(makers, o.size, split));
      }
      for (const auto& e : book_snapshot(book)) REQUIRE(e.size >= 1);
    }
  }
}

TEST_CASE("replay file parsing") {
  std::istringstream ok("1,b,10,100\n\n2,s,5,101\n");
  const auto orders = parse_replay(ok);
  REQUIRE(orders.size() == 2);
  CHECK(orders[1] == LimitOrder{2, Side::sell, 5, 101});
  for (const char* bad : {"1,x,10,100\n", "1,b,ten,100\n", "2,b,1,1\n1,b,1,1\n", "1,b,1\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(parse_replay(in), Error);
  }
  std::istringstream empty("");
  CHECK(parse_replay(empty).empty());
}

}  // TEST_SUITE
