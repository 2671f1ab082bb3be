#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "apportion/methods.hpp"
#include "apportion/problem.hpp"

namespace apportion {

using OrderId = std::uint64_t;
using Price = std::int64_t;  // ticks

enum class Side : char { buy = 'b', sell = 's' };

constexpr Side opposite(Side s) noexcept { return s == Side::buy ? Side::sell : Side::buy; }

struct LimitOrder {
  OrderId id = 0;
  Side side = Side::buy;
  Units size = 0;
  Price price = 0;

  friend bool operator==(const LimitOrder&, const LimitOrder&) = default;
};

struct Fill {
  OrderId maker = 0;
  Units units = 0;

  friend bool operator==(const Fill&, const Fill&) = default;
};

struct ExecutionReport {
  OrderId taker = 0;
  /// Makers in time order; makers allotted zero units are listed with 0.
  std::vector<Fill> fills;
  /// Units posted as a new resting order; 0 when nothing rests.
  Units residual = 0;

  [[nodiscard]] Units filled() const noexcept;
};

/// One row of book_snapshot(): a resting order with its remaining size.
using SnapshotEntry = LimitOrder;

/// Single-price limit order book. An incoming order only meets the opposite
/// side resting at exactly its own price; a partial sweep of that level is
/// split by the configured allocation method.
class OrderBook {
 public:
  /// Throws InvalidOrder (size < 1, price < 1, id not above the last id),
  /// UnsupportedMethod for methods that can exceed a maker's size, and any
  /// allocation error. The book is unchanged when it throws.
  ExecutionReport submit(const LimitOrder& order, const MethodSpec& method);

  /// Levels by ascending price; buys before sells; time order within.
  [[nodiscard]] std::vector<SnapshotEntry> snapshot() const;

  [[nodiscard]] bool empty() const noexcept { return levels_.empty(); }
  [[nodiscard]] Units resting_size(Price price, Side side) const;

 private:
  struct Resting {
    OrderId id;
    Units remaining;
  };
  struct Level {
    std::deque<Resting> buys;
    std::deque<Resting> sells;

    std::deque<Resting>& side(Side s) { return s == Side::buy ? buys : sells; }
    [[nodiscard]] const std::deque<Resting>& side(Side s) const {
      return s == Side::buy ? buys : sells;
    }
  };

  std::map<Price, Level> levels_;
  OrderId last_id_ = 0;
  bool any_order_ = false;
};

ExecutionReport submit_limit_order(OrderBook& book, const LimitOrder& order,
                                   const MethodSpec& method);
std::vector<SnapshotEntry> book_snapshot(const OrderBook& book);

}  // namespace apportion
