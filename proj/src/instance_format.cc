#include "walras/instance_format.h"

#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include "walras/errors.h"

namespace walras {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Token {
  std::string_view text;
  int column = 1;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
  int end_column = 1;
};

std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}, static_cast<int>(raw.size()) + 1};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      const std::size_t begin = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') {
        ++i;
      }
      line.tokens.push_back({raw.substr(begin, i - begin), static_cast<int>(begin) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool AtEnd() const { return next_ >= lines_.size(); }
  const Line& Peek() const { return lines_[next_]; }
  int LastLineNumber() const {
    return lines_.empty() ? 1 : lines_.back().number;
  }

  const Line& Take(std::string_view what) {
    if (AtEnd()) {
      throw ParseError(LastLineNumber() + 1, 1,
                       "unexpected end of input, expected " + std::string(what));
    }
    return lines_[next_++];
  }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
};

[[noreturn]] void Fail(const Line& line, std::size_t token,
                       const std::string& message) {
  const int column =
      token < line.tokens.size() ? line.tokens[token].column : line.end_column;
  throw ParseError(line.number, column, message);
}

std::int64_t ParseInt(const Line& line, std::size_t token, std::string_view what) {
  if (token >= line.tokens.size()) Fail(line, token, "missing " + std::string(what));
  const std::string_view text = line.tokens[token].text;
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(line, token, "expected integer " + std::string(what) + ", got '" +
                          std::string(text) + "'");
  }
  return value;
}

std::uint64_t ParseUnsigned(const Line& line, std::size_t token,
                            std::string_view what) {
  if (token >= line.tokens.size()) Fail(line, token, "missing " + std::string(what));
  const std::string_view text = line.tokens[token].text;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(line, token, "expected unsigned integer " + std::string(what) +
                          ", got '" + std::string(text) + "'");
  }
  return value;
}

Amount ParseValue(const Line& line, std::size_t token, std::string_view what) {
  const std::int64_t v = ParseInt(line, token, what);
  if (v < 0 || v > kMaxInputValue) {
    Fail(line, token, std::string(what) + " must be in [0, 10^12]");
  }
  return v;
}

int ParseCount(const Line& line, std::size_t token, std::string_view what,
               std::int64_t lo, std::int64_t hi) {
  const std::int64_t v = ParseInt(line, token, what);
  if (v < lo || v > hi) {
    Fail(line, token, std::string(what) + " must be in [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

// 1-based item on the page, 0-based result.
int ParseItem(const Line& line, std::size_t token, int item_count) {
  return ParseCount(line, token, "item", 1, item_count) - 1;
}

void ExpectArity(const Line& line, std::size_t arity) {
  if (line.tokens.size() < arity) {
    Fail(line, line.tokens.size(),
         "expected " + std::to_string(arity) + " fields, got " +
             std::to_string(line.tokens.size()));
  }
  if (line.tokens.size() > arity) Fail(line, arity, "unexpected extra field");
}

void ExpectKeyword(const Line& line, std::string_view keyword) {
  if (line.tokens[0].text != keyword) {
    Fail(line, 0, "expected '" + std::string(keyword) + "', got '" +
                      std::string(line.tokens[0].text) + "'");
  }
}

InstanceHeader ParseHeader(Reader& reader) {
  InstanceHeader header;
  if (!reader.AtEnd() && reader.Peek().tokens[0].text == "format") {
    const Line& line = reader.Take("format");
    ExpectArity(line, 2);
    header.version = ParseCount(line, 1, "format version", 1, 1'000'000);
    if (header.version != kFormatVersion) {
      Fail(line, 1, "unsupported format version " +
                        std::to_string(header.version));
    }
  }
  if (!reader.AtEnd() && reader.Peek().tokens[0].text == "prng") {
    const Line& line = reader.Take("prng");
    ExpectArity(line, 3);
    header.prng = PrngTag{std::string(line.tokens[1].text),
                          ParseUnsigned(line, 2, "seed")};
  }
  return header;
}

std::vector<Amount> ParseValues(const Line& line, std::size_t first,
                                int count) {
  ExpectArity(line, first + count);
  std::vector<Amount> values(count);
  for (int j = 0; j < count; ++j) values[j] = ParseValue(line, first + j, "value");
  return values;
}

Valuation ParseAgent(Reader& reader, const Line& line, int m) {
  if (line.tokens.size() < 3) Fail(line, line.tokens.size(), "missing valuation class");
  const std::string_view cls = line.tokens[2].text;
  if (cls == "unit-demand") return UnitDemand{ParseValues(line, 3, m)};
  if (cls == "additive") return Additive{ParseValues(line, 3, m)};
  if (cls == "budget-additive") {
    ExpectArity(line, 4 + m);
    BudgetAdditive b;
    b.budget = ParseValue(line, 3, "budget");
    b.values = ParseValues(line, 4, m);
    return b;
  }
  if (cls == "single-minded") {
    SingleMinded s;
    s.value = ParseValue(line, 3, "value");
    if (line.tokens.size() < 5 || line.tokens[4].text != ":") {
      Fail(line, 4, "expected ':' before the bundle");
    }
    if (line.tokens.size() < 6) Fail(line, 5, "empty single-minded bundle");
    for (std::size_t t = 5; t < line.tokens.size(); ++t) {
      const int item = ParseItem(line, t, m);
      if (s.bundle.contains(item)) Fail(line, t, "repeated item");
      s.bundle = s.bundle.With(item);
    }
    return s;
  }
  if (cls == "pair") {
    ExpectArity(line, 8);
    MultiMindedPair p;
    p.a = ParseItem(line, 3, m);
    p.b = ParseItem(line, 4, m);
    p.value_a = ParseValue(line, 5, "value");
    p.value_b = ParseValue(line, 6, "value");
    p.value_ab = ParseValue(line, 7, "value");
    return p;
  }
  if (cls == "k-demand") {
    ExpectArity(line, 5);
    KDemandTable table;
    table.k = ParseCount(line, 3, "k", 1, m);
    const int t = ParseCount(line, 4, "entry count", 0, 10'000'000);
    for (int e = 0; e < t; ++e) {
      const Line& row = reader.Take("bundle line");
      ExpectKeyword(row, "bundle");
      if (row.tokens.size() < 3) Fail(row, row.tokens.size(), "bundle needs items and a value");
      ItemSet bundle;
      const std::size_t last = row.tokens.size() - 1;
      for (std::size_t i = 1; i < last; ++i) {
        const int item = ParseItem(row, i, m);
        if (bundle.contains(item)) Fail(row, i, "repeated item");
        bundle = bundle.With(item);
      }
      if (bundle.size() > table.k) Fail(row, 1, "bundle larger than k");
      const Amount value = ParseValue(row, last, "value");
      if (!table.entries.emplace(bundle, value).second) {
        Fail(row, 1, "duplicate bundle");
      }
    }
    return table;
  }
  if (cls == "xos") {
    ExpectArity(line, 4);
    const int r = ParseCount(line, 3, "row count", 1, 1'000'000);
    Xos x;
    for (int i = 0; i < r; ++i) {
      const Line& row = reader.Take("xos row");
      x.rows.push_back(ParseValues(row, 0, m));
    }
    return x;
  }
  Fail(line, 2, "unknown valuation class '" + std::string(cls) + "'");
}

void WriteHeader(std::ostringstream& out, const std::optional<PrngTag>& prng) {
  out << "format " << kFormatVersion << '\n';
  if (prng) out << "prng " << prng->name << ' ' << prng->seed << '\n';
}

void WriteValues(std::ostringstream& out, const std::vector<Amount>& values) {
  for (Amount v : values) out << ' ' << v;
}

void WriteItems(std::ostringstream& out, ItemSet bundle) {
  bundle.ForEach([&](int j) { out << ' ' << j + 1; });
}

void ExpectEnd(Reader& reader) {
  if (!reader.AtEnd()) {
    const Line& line = reader.Take("end");
    Fail(line, 0, "unexpected line after the instance body");
  }
}

}  // namespace

InstanceFile ParseInstanceFile(std::string_view text) {
  Reader reader(Tokenize(text));
  InstanceFile file;
  file.header = ParseHeader(reader);
  const Line& head = reader.Take("'market <n> <m>'");
  ExpectKeyword(head, "market");
  ExpectArity(head, 3);
  const int n = ParseCount(head, 1, "agent count", 0, 1'000'000);
  const int m = ParseCount(head, 2, "item count", 0, kMaxItems);
  file.market.item_count = m;
  for (int i = 0; i < n; ++i) {
    const Line& line = reader.Take("agent line");
    ExpectKeyword(line, "agent");
    if (ParseInt(line, 1, "agent index") != i + 1) {
      Fail(line, 1, "expected agent " + std::to_string(i + 1));
    }
    file.market.valuations.push_back(ParseAgent(reader, line, m));
  }
  ExpectEnd(reader);
  ValidateOrThrow(file.market);
  return file;
}

Market ParseMarket(std::string_view text) {
  return ParseInstanceFile(text).market;
}

std::string SerializeInstanceFile(const InstanceFile& file) {
  return SerializeMarket(file.market, file.header.prng);
}

std::string SerializeMarket(const Market& market,
                            const std::optional<PrngTag>& prng) {
  std::ostringstream out;
  WriteHeader(out, prng);
  const int m = market.item_count;
  out << "market " << market.agent_count() << ' ' << m << '\n';
  for (int i = 0; i < market.agent_count(); ++i) {
    out << "agent " << i + 1 << ' ' << ClassName(market.valuations[i]);
    std::visit(
        Overloaded{
            [&](const UnitDemand& v) { WriteValues(out, v.values); },
            [&](const Additive& v) { WriteValues(out, v.values); },
            [&](const BudgetAdditive& v) {
              out << ' ' << v.budget;
              WriteValues(out, v.values);
            },
            [&](const SingleMinded& v) {
              out << ' ' << v.value << " :";
              WriteItems(out, v.bundle);
            },
            [&](const MultiMindedPair& v) {
              out << ' ' << v.a + 1 << ' ' << v.b + 1 << ' ' << v.value_a
                  << ' ' << v.value_b << ' ' << v.value_ab;
            },
            [&](const KDemandTable& v) {
              out << ' ' << v.k << ' ' << v.entries.size();
              for (const auto& [bundle, value] : v.entries) {
                out << "\nbundle";
                WriteItems(out, bundle);
                out << ' ' << value;
              }
            },
            [&](const Xos& v) {
              out << ' ' << v.rows.size();
              for (const auto& row : v.rows) {
                out << '\n';
                for (std::size_t j = 0; j < row.size(); ++j) {
                  out << (j ? " " : "") << row[j];
                }
              }
            },
        },
        market.valuations[i]);
    out << '\n';
  }
  return out.str();
}

ThreeDmFile ParseThreeDmFile(std::string_view text) {
  Reader reader(Tokenize(text));
  ThreeDmFile file;
  file.header = ParseHeader(reader);
  const Line& head = reader.Take("'3dm3 <q> <t>'");
  ExpectKeyword(head, "3dm3");
  ExpectArity(head, 3);
  const int q = ParseCount(head, 1, "q", 1, 1'000'000);
  const int t = ParseCount(head, 2, "triple count", 0, 3 * q);
  file.instance.q = q;
  for (int i = 0; i < t; ++i) {
    const Line& line = reader.Take("triple line");
    ExpectKeyword(line, "triple");
    ExpectArity(line, 4);
    std::array<int, 3> triple{};
    for (int d = 0; d < 3; ++d) triple[d] = ParseCount(line, 1 + d, "element", 1, q) - 1;
    file.instance.triples.push_back(triple);
  }
  ExpectEnd(reader);
  CheckThreeDm(file.instance);
  return file;
}

std::string SerializeThreeDm(const ThreeDmInstance& instance,
                             const std::optional<PrngTag>& prng) {
  std::ostringstream out;
  WriteHeader(out, prng);
  out << "3dm3 " << instance.q << ' ' << instance.triples.size() << '\n';
  for (const auto& t : instance.triples) {
    out << "triple " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  return out.str();
}

ThreePartitionFile ParseThreePartitionFile(std::string_view text) {
  Reader reader(Tokenize(text));
  ThreePartitionFile file;
  file.header = ParseHeader(reader);
  const Line& head = reader.Take("'3partition <n>'");
  ExpectKeyword(head, "3partition");
  if (head.tokens.size() == 3) {
    if (head.tokens[2].text != "strict") Fail(head, 2, "expected 'strict'");
    file.instance.strict = true;
  } else {
    ExpectArity(head, 2);
  }
  file.instance.n = ParseCount(head, 1, "n", 1, 1'000'000);
  const Line& values = reader.Take("'values ...'");
  ExpectKeyword(values, "values");
  ExpectArity(values, 1 + 3 * file.instance.n);
  for (int i = 0; i < 3 * file.instance.n; ++i) {
    file.instance.values.push_back(ParseValue(values, 1 + i, "value"));
  }
  ExpectEnd(reader);
  CheckThreePartition(file.instance);
  return file;
}

std::string SerializeThreePartition(const ThreePartitionInstance& instance,
                                    const std::optional<PrngTag>& prng) {
  std::ostringstream out;
  WriteHeader(out, prng);
  out << "3partition " << instance.n << (instance.strict ? " strict" : "")
      << "\nvalues";
  WriteValues(out, instance.values);
  out << '\n';
  return out.str();
}

namespace {

int ParseSpecNumber(std::string_view text, std::string_view spec,
                    std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("bad " + std::string(what) + " '" + std::string(text) +
                       "' in '" + std::string(spec) + "'");
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos
                                           ? std::string_view::npos
                                           : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

}  // namespace

Allocation ParseAllocationSpec(std::string_view spec, const Market& market) {
  Allocation allocation = Allocation::Empty(market.agent_count());
  if (spec.empty() || spec == "-") return allocation;
  std::set<int> seen_agents;
  for (std::string_view part : Split(spec, ';')) {
    const std::size_t colon = part.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidInput("allocation entry '" + std::string(part) +
                         "' lacks 'agent:items'");
    }
    const int agent = ParseSpecNumber(part.substr(0, colon), spec, "agent");
    if (agent < 1 || agent > market.agent_count()) {
      throw InvalidInput("agent " + std::to_string(agent) + " out of range");
    }
    if (!seen_agents.insert(agent).second) {
      throw InvalidInput("agent " + std::to_string(agent) + " listed twice");
    }
    const std::string_view items = part.substr(colon + 1);
    if (items.empty()) continue;
    ItemSet bundle;
    for (std::string_view item_text : Split(items, ',')) {
      const int item = ParseSpecNumber(item_text, spec, "item");
      if (item < 1 || item > market.item_count) {
        throw InvalidInput("item " + std::to_string(item) + " out of range");
      }
      bundle = bundle.With(item - 1);
    }
    allocation.bundles[agent - 1] = bundle;
  }
  CheckAllocation(market, allocation);
  return allocation;
}

std::string FormatAllocationSpec(const Allocation& allocation) {
  std::string out;
  for (std::size_t i = 0; i < allocation.bundles.size(); ++i) {
    const ItemSet bundle = allocation.bundles[i];
    if (bundle.empty()) continue;
    if (!out.empty()) out += ';';
    out += std::to_string(i + 1) + ':';
    bool first = true;
    bundle.ForEach([&](int j) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(j + 1);
    });
  }
  return out.empty() ? "-" : out;
}

Pricing ParsePriceSpec(std::string_view spec, int item_count) {
  Pricing prices;
  if (item_count == 0) {
    if (!spec.empty()) throw InvalidInput("market has no items to price");
    return prices;
  }
  for (std::string_view part : Split(spec, ',')) {
    if (part.empty() ||
        part.find_first_not_of("0123456789-/") != std::string_view::npos) {
      throw InvalidInput("bad price '" + std::string(part) + "'");
    }
    Rational r;
    if (r.set_str(std::string(part), 10) != 0) {
      throw InvalidInput("bad price '" + std::string(part) + "'");
    }
    if (r.get_den() == 0) throw InvalidInput("zero denominator in price");
    r.canonicalize();
    prices.prices.push_back(r);
  }
  if (prices.size() != item_count) {
    throw InvalidInput("expected " + std::to_string(item_count) +
                       " prices, got " + std::to_string(prices.size()));
  }
  return prices;
}

std::string FormatPriceSpec(const Pricing& prices) {
  std::string out;
  for (int j = 0; j < prices.size(); ++j) {
    if (j) out += ',';
    out += ToString(prices[j]);
  }
  return out;
}

}  // namespace walras
