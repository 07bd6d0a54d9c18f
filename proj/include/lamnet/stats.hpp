#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lamnet {

// Partitioning categories; waiting_vs_oracle is tracked beside them as a
// sub-count of `waiting`.
enum class StatCategory : std::uint8_t {
  Beta,
  Fan,
  Oracle,
  Waiting,
  Readback,
  Amb,
  Erase,
  Other,
};

std::string_view to_string(StatCategory category);

struct Stats {
  std::uint64_t total = 0;
  std::uint64_t indirections = 0;
  std::uint64_t beta = 0;
  std::uint64_t fan = 0;
  std::uint64_t oracle = 0;
  std::uint64_t waiting = 0;
  std::uint64_t waiting_vs_oracle = 0;
  std::uint64_t readback = 0;
  std::uint64_t amb = 0;
  std::uint64_t erase = 0;
  std::uint64_t other = 0;

  void record(StatCategory category, bool waiting_vs_oracle_pair = false);
  std::uint64_t& operator[](StatCategory category);
  std::uint64_t operator[](StatCategory category) const;

  // Sum over the partitioning categories; equals `total` whenever the
  // counters were only updated through record().
  std::uint64_t partition_sum() const;

  // Interactions in which at least one agent is an oracle node.
  std::uint64_t oracle_related() const { return oracle + waiting_vs_oracle; }

  // {"total":n,"indirections":n,"beta":n,...} with a fixed key order.
  std::string to_json() const;

  Stats& operator+=(const Stats& other);
  friend bool operator==(const Stats&, const Stats&) = default;
};

}  // namespace lamnet
