#include "apportion/engine.hpp"

#include <string>

#include "apportion/error.hpp"

namespace apportion {

Units ExecutionReport::filled() const noexcept {
  Units sum = 0;
  for (const auto& f : fills) sum += f.units;
  return sum;
}

ExecutionReport OrderBook::submit(const LimitOrder& order, const MethodSpec& method) {
  if (order.size < 1) throw Error(Errc::invalid_order, "order size must be positive");
  if (order.price < 1) throw Error(Errc::invalid_order, "price must be at least one tick");
  if (any_order_ && order.id <= last_id_) {
    throw Error(Errc::invalid_order, "order id " + std::to_string(order.id) +
                                         " is not above the previous id " +
                                         std::to_string(last_id_));
  }
  if (!respects_capacity(method)) {
    throw Error(Errc::unsupported_method, method_name(method) + " can overfill resting orders");
  }

  ExecutionReport report{order.id, {}, 0};
  Level& level = levels_[order.price];
  auto& makers = level.side(opposite(order.side));

  Units available = 0;
  for (const auto& r : makers) available += r.remaining;

  if (available == 0) {
    report.residual = order.size;
  } else if (order.size >= available) {
    for (const auto& r : makers) report.fills.push_back({r.id, r.remaining});
    makers.clear();
    report.residual = order.size - available;
  } else {
    std::vector<Units> sizes;
    sizes.reserve(makers.size());
    for (const auto& r : makers) sizes.push_back(r.remaining);
    AllocationVector split;
    try {
      split = allocate(AllocationProblem(std::move(sizes), order.size), method);
    } catch (...) {
      if (level.buys.empty() && level.sells.empty()) levels_.erase(order.price);
      throw;
    }
    std::deque<Resting> kept;
    for (std::size_t i = 0; i < makers.size(); ++i) {
      report.fills.push_back({makers[i].id, split[i]});
      const Units left = makers[i].remaining - split[i];
      if (left > 0) kept.push_back({makers[i].id, left});
    }
    makers.swap(kept);
  }

  if (report.residual > 0) level.side(order.side).push_back({order.id, report.residual});
  if (level.buys.empty() && level.sells.empty()) levels_.erase(order.price);
  last_id_ = order.id;
  any_order_ = true;
  return report;
}

std::vector<SnapshotEntry> OrderBook::snapshot() const {
  std::vector<SnapshotEntry> out;
  for (const auto& [price, level] : levels_) {
    for (const Side s : {Side::buy, Side::sell}) {
      for (const auto& r : level.side(s)) out.push_back({r.id, s, r.remaining, price});
    }
  }
  return out;
}

Units OrderBook::resting_size(Price price, Side side) const {
  const auto it = levels_.find(price);
  if (it == levels_.end()) return 0;
  Units sum = 0;
  for (const auto& r : it->second.side(side)) sum += r.remaining;
  return sum;
}

ExecutionReport submit_limit_order(OrderBook& book, const LimitOrder& order,
                                   const MethodSpec& method) {
  return book.submit(order, method);
}

std::vector<SnapshotEntry> book_snapshot(const OrderBook& book) { return book.snapshot(); }

}  // namespace apportion
