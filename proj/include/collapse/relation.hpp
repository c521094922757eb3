#ifndef COLLAPSE_RELATION_HPP
#define COLLAPSE_RELATION_HPP

#include <string>
#include <utility>
#include <vector>

#include "collapse/hf.hpp"

namespace collapse {

// A finite relation presented as a carrier of distinct labels plus edges.
// An edge (v, u) reads "v lies below u": the collapsing function sends u
// to the set of collapses of everything directly below it.
struct CarrierRelation {
  std::vector<std::string> carrier;
  std::vector<std::pair<std::string, std::string>> edges;
};

// Validates label distinctness and edge endpoints.
CarrierRelation make_relation(std::vector<std::string> carrier,
                              std::vector<std::pair<std::string, std::string>> edges);

CarrierRelation relation_from_json(const std::string& text);
std::string relation_to_json(const CarrierRelation& r);

// Finite well-foundedness is acyclicity.
bool is_well_founded(const CarrierRelation& r);

// The collapse is returned in carrier order. On a cyclic input throws
// DomainError naming the canonical cycle witness: among shortest cycles,
// the lexicographically least label sequence starting from its least label.
std::vector<std::pair<std::string, HFSet>> collapse_relation(const CarrierRelation& r);

// The witness computation, exposed for tests; empty when acyclic.
std::vector<std::string> least_cycle(const CarrierRelation& r);

// Addition encoded as a collapse: the truncated relation whose top node
// collapses to the graph { <<n,m>, n+m> : n,m < k }.
CarrierRelation addition_relation(std::size_t k);
HFSet addition_graph_via_collapse(std::size_t k);
HFSet addition_graph_direct(std::size_t k);

// The bit-membership relation on {0..2^bits - 1}: i below j when bit i of
// j is set. The collapse image is the full powerset of the first `bits`
// collapse values; at bits = 4 those values happen to exhaust a cumulative
// level, so the image is the next level.
CarrierRelation ackermann_relation(std::size_t bits);
HFSet ackermann_collapse_image(std::size_t bits);

}  // namespace collapse

#endif
