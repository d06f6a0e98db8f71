#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sgmm/instance.hpp"
#include "sgmm/optimizer.hpp"

namespace sgmm {

struct InstanceFile {
  Instance instance;
  std::optional<CostVector> costs;
};

struct ParseOptions {
  bool check_table_axioms = true;
  std::uint64_t axiom_pair_cap = 10'000'000;
};

/// Line-oriented text format; see README for the grammar.
InstanceFile parse_instance_file(std::string_view text, const ParseOptions& opt = {});
Instance parse_instance(std::string_view text, const ParseOptions& opt = {});
std::string serialize_instance(const Instance& inst, const std::optional<CostVector>& costs = {});

/// "id=value" pairs in edge order, separated by spaces.
std::string format_vector(const GVector& x);
/// Accepts "id=value" or "label=value" pairs separated by spaces or commas;
/// unnamed edges are zero.
GVector parse_vector(const Instance& inst, std::string_view text);
CostVector parse_costs(const Instance& inst, std::string_view text);

struct FixtureParams {
  int p = 1;              // triangle
  int capacity = 1;       // single-edge, marriage
  int worker_quota = 0;   // single-edge; 0 means capacity
  int firm_quota = 0;
  std::uint64_t seed = 1;  // random-linear
  int workers = 3;
  int firms = 3;
  int bmax = 3;
  int qmin = 1;
  int qmax = 3;
  int density = 70;  // percent of worker/firm pairs joined by an edge
};

/// Names: single-edge, marriage, triangle, random-linear.
std::string generate_fixture(std::string_view name, const FixtureParams& params = {});
Instance make_fixture(std::string_view name, const FixtureParams& params = {});

}  // namespace sgmm
