#include "walras/cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "walras/equilibrium.h"
#include "walras/errors.h"
#include "walras/instance_format.h"
#include "walras/reductions.h"

namespace walras {
namespace {

std::string ReadInput(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  buffer << in.rdbuf();
  return buffer.str();
}

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::string_view MethodName(PricingMethod method) {
  return method == PricingMethod::kDifferenceConstraints
             ? "difference-constraints"
             : "simplex";
}

void PrintPrices(std::ostream& out, const Pricing& prices, bool decimal) {
  out << "prices " << FormatPriceSpec(prices) << '\n';
  if (!decimal) return;
  out << "prices-approx";
  for (int j = 0; j < prices.size(); ++j) {
    std::ostringstream cell;
    cell << std::fixed << std::setprecision(6) << prices[j].get_d();
    out << (j ? "," : " ") << cell.str();
  }
  out << "  # approximate, not authoritative\n";
}

void PrintWitness(std::ostream& out, const LinearSystem& system,
                  const std::vector<std::size_t>& witness) {
  out << "witness " << witness.size() << '\n';
  for (std::size_t row : witness) {
    out << "  " << FormatConstraint(system.constraints[row]) << '\n';
  }
}

struct Flags {
  std::string file;
  std::string algo;
  std::string allocation;
  std::string prices;
  bool decimal = false;
  std::string family;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  bool planted = false;
  bool force = false;
  std::string kind;
};

int Solve(const Flags& f, std::ostream& out) {
  const Market market = ParseMarket(ReadInput(f.file));
  const EquilibriumResult result = SolveWalrasian(market);
  if (const auto* we = std::get_if<Equilibrium>(&result)) {
    out << "welfare " << we->welfare << '\n'
        << "allocation " << FormatAllocationSpec(we->allocation) << '\n'
        << "algorithm " << AlgorithmTag(we->algorithm) << '\n'
        << "pricing " << MethodName(we->method) << '\n';
    PrintPrices(out, we->prices, f.decimal);
    out << "WE\n";
    return kExitOk;
  }
  const auto& none = std::get<NoEquilibrium>(result);
  out << "welfare " << none.welfare << '\n'
      << "allocation " << FormatAllocationSpec(none.allocation) << '\n'
      << "algorithm " << AlgorithmTag(none.algorithm) << '\n';
  PrintWitness(out, none.system, none.witness);
  out << "NO-WE\n";
  return kExitNegative;
}

int Winner(const Flags& f, std::ostream& out) {
  const Market market = ParseMarket(ReadInput(f.file));
  WdResult result;
  if (f.algo.empty()) {
    result = WdDispatch(market);
  } else {
    const auto algorithm = AlgorithmFromTag(f.algo);
    if (!algorithm) throw InvalidInput("unknown algorithm '" + f.algo + "'");
    result = WdRun(market, *algorithm);
  }
  out << "welfare " << result.welfare << '\n'
      << "allocation " << FormatAllocationSpec(result.allocation) << '\n'
      << "algorithm " << AlgorithmTag(result.algorithm) << '\n';
  return kExitOk;
}

int Price(const Flags& f, std::ostream& out) {
  const Market market = ParseMarket(ReadInput(f.file));
  const Allocation allocation = ParseAllocationSpec(f.allocation, market);
  const PricingOutcome outcome = PriceAllocation(market, allocation);
  out << "pricing " << MethodName(outcome.method) << '\n'
      << "constraints " << outcome.system.constraints.size() << '\n';
  if (const auto* ok = std::get_if<Feasible>(&outcome.result)) {
    PrintPrices(out, ok->prices, f.decimal);
    out << "feasible\n";
    return kExitOk;
  }
  PrintWitness(out, outcome.system, std::get<Infeasible>(outcome.result).witness);
  out << "infeasible\n";
  return kExitNegative;
}

int Verify(const Flags& f, std::ostream& out) {
  const Market market = ParseMarket(ReadInput(f.file));
  const Allocation allocation = ParseAllocationSpec(f.allocation, market);
  const Pricing prices = ParsePriceSpec(f.prices, market.item_count);
  const WeVerdict verdict = VerifyWe(market, allocation, prices);
  if (verdict.accepted()) {
    out << "accept\n";
    return kExitOk;
  }
  out << "reject " << verdict.rejection->message << '\n';
  return kExitNegative;
}

std::int64_t Param(const Flags& f, std::size_t index, std::string_view name) {
  if (index >= f.params.size()) {
    throw InvalidInput("generate " + f.family + ": missing parameter " +
                       std::string(name));
  }
  const std::string& text = f.params[index];
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw InvalidInput("generate " + f.family + ": parameter " +
                       std::string(name) + " is not an integer: '" + text + "'");
  }
  return value;
}

void ExpectParams(const Flags& f, std::size_t count, std::string_view usage) {
  if (f.params.size() != count) {
    throw InvalidInput("generate " + f.family + " expects " + std::string(usage));
  }
}

// Refuses instances whose market the exact solvers cannot handle.
void CheckSolvable(const Flags& f, const Market& market) {
  if (f.force) return;
  try {
    WdDispatch(market);
  } catch (const BudgetExceeded& e) {
    throw InvalidInput("generate " + f.family + ": instance exceeds solver budgets (" +
                       e.what() + "); pass --force to emit it anyway");
  }
}

int Generate(const Flags& f, std::ostream& out) {
  const PrngTag tag{std::string(Prng::kName), f.seed};
  if (f.family == "random-ud" || f.family == "random-kdemand" ||
      f.family == "random-xos") {
    RandomMarketParams params;
    params.seed = f.seed;
    if (f.family == "random-ud") {
      ExpectParams(f, 3, "<n> <m> <value-bound>");
      params.family = MarketFamily::kUnitDemand;
    } else {
      ExpectParams(f, 4, f.family == "random-xos"
                             ? "<n> <m> <value-bound> <rows>"
                             : "<n> <m> <value-bound> <k>");
      params.family = f.family == "random-xos" ? MarketFamily::kXos
                                               : MarketFamily::kKDemandTable;
      params.k = static_cast<int>(Param(f, 3, "k"));
    }
    params.agents = static_cast<int>(Param(f, 0, "n"));
    params.items = static_cast<int>(Param(f, 1, "m"));
    params.value_bound = Param(f, 2, "value-bound");
    const Market market = RandomMarket(params);
    CheckSolvable(f, market);
    out << SerializeMarket(market, tag);
    return kExitOk;
  }
  if (f.family == "3dm3") {
    ExpectParams(f, 2, "<q> <triples>");
    const auto q = Param(f, 0, "q");
    const auto t = Param(f, 1, "triples");
    if (q < 1 || q > 100'000 || t < 0 || t > 3 * q) {
      throw InvalidInput("generate 3dm3 needs 1 <= q <= 100000, 0 <= t <= 3q");
    }
    const ThreeDmInstance instance = RandomThreeDm(
        static_cast<int>(q), static_cast<int>(t), f.planted, f.seed);
    if (!f.force) {
      const auto reduced = FromThreeDm(instance);
      if (const auto* market = std::get_if<Market>(&reduced)) CheckSolvable(f, *market);
    }
    out << SerializeThreeDm(instance, tag);
    return kExitOk;
  }
  if (f.family == "3partition") {
    ExpectParams(f, 2, "<n> <max-value>");
    const auto n = Param(f, 0, "n");
    if (n < 1 || n > 100'000) throw InvalidInput("generate 3partition needs 1 <= n <= 100000");
    const ThreePartitionInstance instance = RandomThreePartition(
        static_cast<int>(n), Param(f, 1, "max-value"), f.planted, f.seed);
    if (!f.force) {
      try {
        CheckSolvable(f, FromThreePartition(instance));
      } catch (const BudgetExceeded& e) {
        throw InvalidInput("generate 3partition: reduced market too large (" +
                           std::string(e.what()) + "); pass --force to emit it anyway");
      }
    }
    out << SerializeThreePartition(instance, tag);
    return kExitOk;
  }
  throw InvalidInput("unknown family '" + f.family +
                     "' (random-ud, random-kdemand, random-xos, 3dm3, 3partition)");
}

int Reduce(const Flags& f, std::ostream& out) {
  if (f.kind == "3dm3") {
    const ThreeDmFile file = ParseThreeDmFile(ReadInput(f.file));
    const auto reduced = FromThreeDm(file.instance);
    if (const auto* marker = std::get_if<TriviallyUnsatisfiable>(&reduced)) {
      out << "trivially-unsatisfiable x " << marker->element + 1 << '\n';
      return kExitNegative;
    }
    out << SerializeMarket(std::get<Market>(reduced));
    return kExitOk;
  }
  if (f.kind == "3partition") {
    const ThreePartitionFile file = ParseThreePartitionFile(ReadInput(f.file));
    out << SerializeMarket(FromThreePartition(file.instance));
    return kExitOk;
  }
  throw InvalidInput("unknown reduction '" + f.kind + "' (3dm3, 3partition)");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Exact Walrasian equilibria for k-demand markets", "walras"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Optimal allocation and equilibrium prices");
  solve->add_option("file", f.file, "Market file ('-' for stdin)")->required();
  solve->add_flag("--decimal", f.decimal, "Also print approximate decimal prices");

  auto* winner = app.add_subcommand("winner", "Winner determination only");
  winner->add_option("file", f.file, "Market file")->required();
  winner->add_option("--algo", f.algo,
                     "bruteforce, unit-demand-matching, pair-matching, "
                     "few-items-dp or few-agents-enum");

  auto* price = app.add_subcommand("price", "Pricing feasibility for an allocation");
  price->add_option("file", f.file, "Market file")->required();
  price->add_option("--allocation", f.allocation, "e.g. 1:2,3;2:1")->required();
  price->add_flag("--decimal", f.decimal, "Also print approximate decimal prices");

  auto* verify = app.add_subcommand("verify", "Check an allocation and prices");
  verify->add_option("file", f.file, "Market file")->required();
  verify->add_option("--allocation", f.allocation, "e.g. 1:2,3;2:1")->required();
  verify->add_option("--prices", f.prices, "e.g. 0,3/2,1")->required();

  auto* generate = app.add_subcommand("generate", "Emit a seeded instance");
  generate->add_option("family", f.family,
                       "random-ud, random-kdemand, random-xos, 3dm3, 3partition")
      ->required();
  generate->add_option("params", f.params, "Family parameters");
  generate->add_option("--seed", f.seed, "PRNG seed");
  generate->add_flag("--planted", f.planted, "Plant a solution (3dm3, 3partition)");
  generate->add_flag("--force", f.force, "Emit instances beyond the solver budgets");

  auto* reduce = app.add_subcommand("reduce", "Reduce a 3dm3 or 3partition instance to a market");
  reduce->add_option("kind", f.kind, "3dm3 or 3partition")->required();
  reduce->add_option("file", f.file, "Instance file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << OneLine(e.what()) << '\n';
    return kExitError;
  }

  try {
    if (*solve) return Solve(f, out);
    if (*winner) return Winner(f, out);
    if (*price) return Price(f, out);
    if (*verify) return Verify(f, out);
    if (*generate) return Generate(f, out);
    if (*reduce) return Reduce(f, out);
  } catch (const std::exception& e) {
    err << "error: " << OneLine(e.what()) << '\n';
    return kExitError;
  }
  err << "error: no command\n";
  return kExitError;
}

}  // namespace walras
