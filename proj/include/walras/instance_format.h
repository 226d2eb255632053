#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "walras/market.h"
#include "walras/reductions.h"

namespace walras {

// Line-oriented text format. Items and agents are 1-indexed on the page and
// 0-indexed in memory; '#' starts a comment. Canonical files begin with
//
//   format 1
//   prng mt19937_64 <seed>     (only for generated instances)
//
// and then one of the bodies below. The header is optional when parsing.
//
//   market <n> <m>
//   agent <i> unit-demand <v1> ... <vm>
//   agent <i> additive <v1> ... <vm>
//   agent <i> budget-additive <B> <v1> ... <vm>
//   agent <i> single-minded <value> : <j1> <j2> ...
//   agent <i> pair <a> <b> <v_a> <v_b> <v_ab>
//   agent <i> k-demand <k> <t>
//   bundle <j1> ... <js> <value>          (t lines)
//   agent <i> xos <r>
//   <w1> ... <wm>                         (r lines)
//
//   3dm3 <q> <t>
//   triple <x> <y> <z>                    (t lines)
//
//   3partition <n> [strict]
//   values <a1> ... <a3n>

inline constexpr int kFormatVersion = 1;

struct PrngTag {
  std::string name;
  std::uint64_t seed = 0;
  bool operator==(const PrngTag&) const = default;
};

struct InstanceHeader {
  int version = kFormatVersion;
  std::optional<PrngTag> prng;
  bool operator==(const InstanceHeader&) const = default;
};

struct InstanceFile {
  InstanceHeader header;
  Market market;
};

// Throws ParseError on syntax errors and InvalidInput when the parsed market
// fails Validate.
InstanceFile ParseInstanceFile(std::string_view text);
Market ParseMarket(std::string_view text);

std::string SerializeInstanceFile(const InstanceFile& file);
std::string SerializeMarket(const Market& market,
                            const std::optional<PrngTag>& prng = std::nullopt);

struct ThreeDmFile {
  InstanceHeader header;
  ThreeDmInstance instance;
};

ThreeDmFile ParseThreeDmFile(std::string_view text);
std::string SerializeThreeDm(const ThreeDmInstance& instance,
                             const std::optional<PrngTag>& prng = std::nullopt);

struct ThreePartitionFile {
  InstanceHeader header;
  ThreePartitionInstance instance;
};

ThreePartitionFile ParseThreePartitionFile(std::string_view text);
std::string SerializeThreePartition(
    const ThreePartitionInstance& instance,
    const std::optional<PrngTag>& prng = std::nullopt);

// "1:2,3;2:1" -> agent 1 holds items 2 and 3, agent 2 holds item 1. Agents
// not mentioned hold nothing; "" is the empty allocation. Throws InvalidInput.
Allocation ParseAllocationSpec(std::string_view spec, const Market& market);
// Inverse of the above, listing only agents with nonempty bundles; "-" when
// nothing is allocated.
std::string FormatAllocationSpec(const Allocation& allocation);

// "0,3/2,1" with exactly m entries.
Pricing ParsePriceSpec(std::string_view spec, int item_count);
std::string FormatPriceSpec(const Pricing& prices);

}  // namespace walras
