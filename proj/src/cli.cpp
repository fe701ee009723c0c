#include "nullbound/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nullbound/ackermann.hpp"
#include "nullbound/antichain.hpp"
#include "nullbound/bounds.hpp"
#include "nullbound/dickson.hpp"
#include "nullbound/errors.hpp"
#include "nullbound/hilbert.hpp"

namespace nullbound::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "1";
constexpr std::uint64_t kDefaultEmitLimit = 10'000;
constexpr std::uint64_t kDefaultTail = 16;
constexpr std::uint64_t kDefaultCap = 64;
constexpr std::size_t kListedBlocks = 32;

struct HelpRequested {
  std::string text;
};

constexpr Command kCommands[] = {Command::length, Command::sequence, Command::bound, Command::report,
                                 Command::verify, Command::hilbert,  Command::oracle};

Command parse_command(std::string_view s) {
  for (Command c : kCommands) {
    if (s == to_string(c)) return c;
  }
  throw ParseError("unknown command: " + std::string(s));
}

std::string str(const ExpNum& x) { return x.render(); }
std::string str(std::uint64_t x) { return std::to_string(x); }

ExpNum parse_num(const std::string& what, const std::string& text) {
  try {
    return ExpNum::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

mpq_class parse_rational(const std::string& what, const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw ParseError(what + ": not a rational number: " + text);
  }
  q.canonicalize();
  return q;
}

mpz_class parse_integer(const std::string& what, const std::string& text) {
  mpz_class z;
  if (text.empty() || z.set_str(text, 10) != 0) throw ParseError(what + ": not an integer: " + text);
  return z;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag, Command c) {
  if (!v) throw ParseError(std::string(flag) + " is required for " + to_string(c));
  return *v;
}

GrowthFunction growth(const JobSpec& s) { return GrowthFunction::parse(need(s.f, "--f", s.command)); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

// Single-file store of length results.
class Cache {
 public:
  explicit Cache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) {
      doc_ = {{"schema", kSchema}, {"entries", json::object()}};
      return;
    }
    try {
      doc_ = json::parse(in);
      if (!doc_.is_object() || !doc_.contains("entries") || !doc_["entries"].is_object()) {
        throw Error("no entries");
      }
    } catch (const std::exception&) {
      std::cerr << "nullbound: ignoring unreadable cache " << path_ << "\n";
      writable_ = false;
      doc_ = {{"schema", kSchema}, {"entries", json::object()}};
    }
  }

  std::optional<json> get(const std::string& key) const {
    const auto& e = doc_["entries"];
    if (auto it = e.find(key); it != e.end() && it->contains("result")) return (*it)["result"];
    return std::nullopt;
  }

  void put(const std::string& key, const std::string& spec, const json& result) {
    if (!writable_) return;
    doc_["entries"][key] = {{"spec", spec}, {"result", result}};
    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream o(tmp, std::ios::trunc);
      if (!o) {
        std::cerr << "nullbound: cannot write cache " << path_ << "\n";
        return;
      }
      o << doc_.dump(1) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path_, ec);
    if (ec) std::cerr << "nullbound: cannot write cache " << path_ << ": " << ec.message() << "\n";
  }

 private:
  std::string path_;
  json doc_;
  bool writable_ = true;
};

ojson tuple_json(const Tuple& t) {
  ojson coords = ojson::array();
  for (const auto& c : t.coords) coords.push_back(str(c));
  return {{"tuple", coords}, {"component", str(t.component)}};
}

ojson header(const JobSpec& s) { return {{"schema", kSchema}, {"command", to_string(s.command)}}; }

std::string text_value(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_object() && v.contains("tuple")) {
    std::string out = "(";
    for (std::size_t k = 0; k < v["tuple"].size(); ++k) {
      if (k) out += ",";
      out += v["tuple"][k].get<std::string>();
    }
    out += ")";
    if (v["component"] != "0") out += "#" + v["component"].get<std::string>();
    return out;
  }
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) {
      if (!out.empty()) out += " ";
      out += text_value(x);
    }
    return out;
  }
  return v.dump();
}

void emit(std::ostream& out, const ojson& doc, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    out << doc.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : doc.items()) {
    if (k == "schema") continue;
    out << k << ": " << text_value(v) << "\n";
  }
}

// Sequence documents: an object with "elements", a bare array, or the JSON lines of `sequence`.
SequenceRecord read_sequence(std::istream& in, const JobSpec& s) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  auto number = [](const json& v) -> ExpNum {
    if (v.is_string()) return ExpNum::parse(v.get<std::string>());
    if (v.is_number_unsigned()) return ExpNum(v.get<std::uint64_t>());
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return ExpNum(v.get<std::uint64_t>());
    throw ParseError("expected a nonnegative number, got " + v.dump());
  };
  auto small = [&](const json& v) -> unsigned {
    const auto x = number(v).to_uint64();
    if (!x || *x > 1'000'000) throw ParseError("value out of range: " + v.dump());
    return static_cast<unsigned>(*x);
  };
  auto element = [&](const json& e) {
    Tuple t;
    const json& coords = e.is_object() ? e.at("tuple") : e;
    if (!coords.is_array()) throw ParseError("tuple must be an array");
    for (const auto& c : coords) t.coords.push_back(number(c));
    if (e.is_object() && e.contains("component")) t.component = small(e["component"]);
    return t;
  };

  SequenceRecord seq;
  std::optional<unsigned> m, n;
  std::optional<std::string> f;
  json doc;
  bool whole = true;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    whole = false;
  }
  if (whole && doc.is_object() && doc.contains("elements")) {
    for (const auto& e : doc["elements"]) seq.elements.push_back(element(e));
    if (doc.contains("m")) m = small(doc["m"]);
    if (doc.contains("n")) n = small(doc["n"]);
    if (doc.contains("f")) f = doc["f"].get<std::string>();
  } else if (whole && doc.is_array()) {
    for (const auto& e : doc) seq.elements.push_back(element(e));
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const json j = json::parse(line);
      if (j.contains("truncated") && j["truncated"] == true && !j.contains("length")) {
        throw PreconditionViolated("input is a truncated stream");
      }
      if (j.contains("tuple")) {
        seq.elements.push_back(element(j));
      } else if (j.contains("f") && j.contains("m")) {
        f = j["f"].get<std::string>();
        m = small(j["m"]);
        if (j.contains("n")) n = small(j["n"]);
      }
    }
  }

  if (s.m) m = s.m;
  if (s.n) n = s.n;
  if (s.f) f = s.f;
  if (!m) {
    if (seq.elements.empty()) throw ParseError("cannot infer m from an empty sequence");
    m = static_cast<unsigned>(seq.elements.front().coords.size());
  }
  if (!n) {
    unsigned top = 0;
    for (const auto& t : seq.elements) top = std::max(top, t.component);
    n = top + 1;
  }
  seq.m = *m;
  seq.n = *n;
  if (f) seq.growth = GrowthFunction::parse(*f);
  for (const auto& t : seq.elements) {
    if (t.coords.size() != seq.m) throw PreconditionViolated("tuple of the wrong length: " + t.render());
    if (t.component >= seq.n) throw PreconditionViolated("component out of range: " + t.render());
  }
  return seq;
}

SequenceRecord input_sequence(const JobSpec& s, std::istream& in) {
  if (s.input) {
    if (*s.input == "-") return read_sequence(in, s);
    std::ifstream file(*s.input);
    if (!file) throw ParseError("cannot read " + *s.input);
    return read_sequence(file, s);
  }
  if (!s.f || !s.m) throw ParseError("an input file or --f and --m are required");
  // The extremal prefix.
  const GrowthFunction f = growth(s);
  SequenceRecord seq;
  seq.m = *s.m;
  seq.n = s.n.value_or(1);
  seq.growth = f;
  seq.elements = extremal_sequence(f, seq.m, seq.n, s.emit_limit.value_or(kDefaultEmitLimit));
  return seq;
}

int cmd_length(const JobSpec& s, std::ostream& out) {
  const GrowthFunction f = growth(s);
  const unsigned m = need(s.m, "--m", s.command);
  const unsigned n = s.n.value_or(1);

  JobSpec key_spec;
  key_spec.command = Command::length;
  key_spec.f = f.render();
  key_spec.m = m;
  key_spec.n = n;
  const std::string canon = key_spec.canonical();

  std::optional<Cache> cache;
  if (auto path = cache_file(s)) cache.emplace(*path);
  const std::string key = sha256_hex(canon);

  json result;
  bool cached = false;
  if (cache) {
    if (auto hit = cache->get(key)) {
      result = *hit;
      cached = true;
    }
  }
  if (!cached) {
    const LengthResult r = max_length(f, m, n);
    json per = json::array();
    for (const auto& x : r.per_component) per.push_back(str(x));
    result = {{"length", str(r.total)}, {"per_component", per}, {"method", to_string(r.method)}};
    if (cache) cache->put(key, canon, result);
  }

  ojson doc = header(s);
  doc["f"] = f.render();
  doc["m"] = str(m);
  doc["n"] = str(n);
  doc["length"] = result.at("length");
  doc["per_component"] = result.at("per_component");
  doc["method"] = result.at("method");
  doc["cached"] = cached;
  emit(out, doc, s.output);
  return kExitOk;
}

int cmd_sequence(const JobSpec& s, std::ostream& out) {
  const GrowthFunction f = growth(s);
  const unsigned m = need(s.m, "--m", s.command);
  const unsigned n = s.n.value_or(1);
  const std::uint64_t limit = s.emit_limit.value_or(kDefaultEmitLimit);
  const std::uint64_t tail = s.tail.value_or(kDefaultTail);
  const bool text = s.output == OutputFormat::text;

  auto line = [&](const ojson& j) {
    if (!text) {
      out << j.dump() << "\n";
    } else if (j.contains("tuple")) {
      out << j["i"].get<std::string>() << " " << text_value(j) << "\n";
    } else {
      emit(out, j, OutputFormat::text);
    }
  };
  auto tuple_line = [&](const ExpNum& i, const Tuple& t) {
    ojson j = {{"i", str(i)}};
    j.update(tuple_json(t));
    line(j);
  };

  if (!text) {
    ojson h = header(s);
    h["f"] = f.render();
    h["m"] = str(m);
    h["n"] = str(n);
    h["emit_limit"] = str(limit);
    line(h);
  }

  ExtremalWalker walker(f, m, n);
  std::vector<Block> blocks;
  ExpNum total;
  std::uint64_t emitted = 0;
  while (auto b = walker.next()) {
    while (emitted < limit && ExpNum(emitted) < total + b->length) {
      tuple_line(ExpNum(emitted + 1), block_tuple(*b, f, ExpNum(emitted) - total));
      ++emitted;
    }
    total += b->length;
    blocks.push_back(std::move(*b));
    out.flush();
  }

  const bool truncated = total > ExpNum(emitted);
  std::uint64_t tail_count = 0;
  if (truncated) {
    const ExpNum rest = total - ExpNum(emitted);
    tail_count = rest < ExpNum(tail) ? *rest.to_uint64() : tail;
    line({{"truncated", true}, {"omitted", str(rest - ExpNum(tail_count))}});
    std::vector<std::pair<ExpNum, Tuple>> back;
    std::uint64_t need_more = tail_count;
    for (auto it = blocks.rbegin(); it != blocks.rend() && need_more > 0; ++it) {
      const std::uint64_t take = it->length < ExpNum(need_more) ? *it->length.to_uint64() : need_more;
      for (std::uint64_t k = 1; k <= take; ++k) {
        const ExpNum t = it->length - ExpNum(k);
        back.emplace_back(it->first_index + t, block_tuple(*it, f, t));
      }
      need_more -= take;
    }
    for (auto it = back.rbegin(); it != back.rend(); ++it) tuple_line(it->first, it->second);
  }

  ojson footer = {{"length", str(total)},
                  {"truncated", truncated},
                  {"head", str(emitted)},
                  {"tail", str(tail_count)},
                  {"blocks_total", str(static_cast<std::uint64_t>(blocks.size()))}};
  if (truncated) {
    ojson listed = ojson::array();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (k >= kListedBlocks && k + kListedBlocks < blocks.size()) continue;
      const Block& b = blocks[k];
      listed.push_back({{"component", str(b.component)},
                        {"first_index", str(b.first_index)},
                        {"length", str(b.length)},
                        {"first", tuple_json(b.first)["tuple"]},
                        {"last", tuple_json(b.last)["tuple"]}});
    }
    footer["blocks"] = listed;
  }
  line(footer);
  return kExitOk;
}

ojson verdict_json(const Verdict& v) {
  ojson failures = ojson::array();
  for (const auto& x : v.failures) failures.push_back({{"i", str(x.i)}, {"inequality", std::to_string(x.inequality)}});
  ojson j = {{"holds", v.holds}, {"first", str(v.first)}, {"last", str(v.last)}, {"failures", failures}};
  j["persists"] = v.persists ? ojson(*v.persists) : ojson(nullptr);
  return j;
}

int cmd_bound(const JobSpec& s, std::ostream& out) {
  const GrowthFunction f = growth(s);
  const unsigned m = need(s.m, "--m", s.command);
  const std::string mode = s.mode.value_or("antichain");
  ojson doc = header(s);
  doc["mode"] = mode;
  doc["f"] = f.render();
  doc["m"] = str(m);

  Lemma lemma;
  unsigned n = 1;
  if (mode == "antichain") {
    n = s.n.value_or(1);
    lemma = Lemma::antiprop(s.d.value_or(3));
    doc["n"] = str(n);
  } else {
    lemma.kind = parse_lemma(mode);
    lemma.d = need(s.d, "--d", s.command);
    if (lemma.kind == LemmaKind::lexbound3) lemma.a = parse_integer("--a", need(s.a, "--a", s.command));
  }
  doc["d"] = str(lemma.d);
  if (lemma.kind == LemmaKind::lexbound3) doc["a"] = lemma.a.get_str();

  const Verdict v = check_hypothesis(lemma, f, m);
  doc["hypothesis"] = verdict_json(v);
  doc["forced"] = s.force;
  try {
    const BoundValue b = mode == "antichain" ? antichain_bound(f, m, n, lemma.d, s.force)
                                             : dickson_bound(lemma, f, m, s.force);
    doc["bound"] = b.render();
    doc["value"] = b.value ? ojson(str(*b.value)) : ojson(nullptr);
  } catch (const HypothesisViolated& e) {
    doc["error"] = "hypothesis";
    doc["message"] = e.what();
    emit(out, doc, s.output);
    return kExitHypothesis;
  }
  emit(out, doc, s.output);
  return kExitOk;
}

int cmd_report(const JobSpec& s, std::ostream& out) {
  const unsigned m = need(s.m, "--m", s.command);
  const unsigned n = s.n.value_or(1);
  const ExpNum ell = parse_num("--l", need(s.l, "--l", s.command));
  const ExpNum D = parse_num("--D", need(s.D, "--D", s.command));
  const mpq_class c = parse_rational("--c", s.c.value_or("1"));
  const std::string mode = s.mode.value_or("exact");
  if (mode != "exact" && mode != "upper") throw ParseError("--mode must be exact or upper for report");

  const BoundReport r = nullstellensatz_report(m, n, ell, D, c, mode == "exact" ? ReportMode::exact : ReportMode::upper);
  auto opt = [](const std::optional<ExpNum>& x) { return x ? ojson(str(*x)) : ojson(nullptr); };
  ojson doc = header(s);
  doc["m"] = str(m);
  doc["n"] = str(n);
  doc["l"] = str(ell);
  doc["D"] = str(D);
  doc["c"] = c.get_str();
  doc["mode"] = mode;
  doc["length"] = opt(r.length);
  doc["T"] = opt(r.t_exact);
  if (r.t_exact_error) doc["T_error"] = *r.t_exact_error;
  doc["T_upper"] = r.t_upper.render();
  doc["T_upper_value"] = opt(r.t_upper_value);
  doc["exact_within_upper"] = r.exact_within_upper ? ojson(*r.exact_within_upper) : ojson(nullptr);
  doc["alpha_T"] = r.alpha_t.render();
  doc["alpha_T_minus_1"] = r.alpha_t_minus_1.render();
  doc["B"] = r.b_expression.render();
  doc["old_bound"] = r.old_bound.render();
  ojson checks = ojson::array();
  for (const auto& h : r.hypothesis_checks) {
    checks.push_back({{"lemma", h.lemma}, {"holds", h.holds}, {"first", str(h.first)}, {"last", str(h.last)}});
  }
  doc["hypothesis_checks"] = checks;
  doc["constant_note"] = r.constant_note;
  emit(out, doc, s.output);
  return kExitOk;
}

int cmd_verify(const JobSpec& s, std::ostream& out, std::istream& in) {
  SequenceRecord seq = input_sequence(s, in);
  const VerifyResult v = verify(seq);
  ojson doc = header(s);
  doc["m"] = str(seq.m);
  doc["n"] = str(seq.n);
  doc["length"] = str(static_cast<std::uint64_t>(seq.elements.size()));
  doc["dicksonian"] = v.dicksonian;
  doc["antichain"] = v.antichain;
  doc["witness"] = v.witness ? ojson::array({str(v.witness->first), str(v.witness->second)}) : ojson(nullptr);
  if (seq.growth) {
    doc["f"] = seq.growth->render();
    try {
      validate(seq);
      doc["certificate"] = true;
    } catch (const PreconditionViolated& e) {
      doc["certificate"] = false;
      doc["certificate_error"] = e.what();
    }
  } else {
    doc["certificate"] = nullptr;
  }
  emit(out, doc, s.output);
  return kExitOk;
}

int cmd_hilbert(const JobSpec& s, std::ostream& out, std::istream& in) {
  const SequenceRecord seq = input_sequence(s, in);
  const std::size_t prefix = s.i ? static_cast<std::size_t>(*s.i) : seq.elements.size();
  if (prefix > seq.elements.size()) throw PreconditionViolated("--i exceeds the sequence length");
  ojson doc = header(s);
  doc["m"] = str(seq.m);
  doc["n"] = str(seq.n);
  doc["prefix"] = str(static_cast<std::uint64_t>(prefix));
  doc["compressed"] = is_compressed(seq, prefix);
  if (s.D) {
    const auto d = parse_num("--D", *s.D).to_uint64();
    if (!d) throw ParseError("--D must be a machine-size degree");
    doc["degree"] = str(*d);
    doc["hs"] = hs(seq, prefix, *d).get_str();
  } else {
    std::uint64_t top = 0;
    for (std::size_t k = 0; k < prefix; ++k) {
      const auto deg = seq.elements[k].degree().to_uint64();
      if (!deg) throw BudgetExceeded("degree too large to tabulate: " + seq.elements[k].render());
      top = std::max(top, *deg);
    }
    ojson values = ojson::array();
    for (std::uint64_t d = 0; d <= top + 1; ++d) values.push_back(hs(seq, prefix, d).get_str());
    doc["values"] = values;
  }
  emit(out, doc, s.output);
  return kExitOk;
}

int cmd_oracle(const JobSpec& s, std::ostream& out) {
  const unsigned m = need(s.m, "--m", s.command);
  const unsigned n = s.n.value_or(1);
  const std::string mode = s.mode.value_or("antichain");
  const std::uint64_t cap = s.cap.value_or(kDefaultCap);
  ojson doc = header(s);
  doc["mode"] = mode;
  if (s.f) doc["f"] = growth(s).render();
  doc["m"] = str(m);
  doc["n"] = str(n);
  doc["cap"] = str(cap);

  BruteResult r;
  if (mode == "antichain") {
    r = brute_max_length(growth(s), m, n, cap);
  } else {
    if (n != 1) throw PreconditionViolated("Dicksonian oracles take n = 1");
    DicksonMode dm;
    if (mode == "max_growth") {
      dm = DicksonMode::max_growth();
    } else if (mode == "degree_growth") {
      dm = DicksonMode::degree_growth();
    } else if (mode == "fixed_degree") {
      dm = DicksonMode::fixed_degree(need(s.h, "--start", s.command));
      doc["h"] = str(dm.h);
    } else {
      throw ParseError("unknown oracle mode: " + mode);
    }
    DicksonCaps caps;
    caps.length_cap = cap;
    std::optional<GrowthFunction> f;
    if (s.f) f = growth(s);
    r = brute_dickson_max(f, m, dm, caps);
  }
  doc["length"] = str(r.length);
  doc["method"] = to_string(LengthMethod::brute_force);
  ojson w = ojson::array();
  for (const auto& t : r.witness.elements) w.push_back(tuple_json(t));
  doc["witness"] = w;
  emit(out, doc, s.output);
  return kExitOk;
}

int fail(const JobSpec& s, std::ostream& out, int code, const char* kind, const std::string& msg,
         ojson extra = ojson::object()) {
  ojson doc = header(s);
  doc["error"] = kind;
  doc["message"] = msg;
  doc.update(extra);
  emit(out, doc, s.output);
  return code;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::length: return "length";
    case Command::sequence: return "sequence";
    case Command::bound: return "bound";
    case Command::report: return "report";
    case Command::verify: return "verify";
    case Command::hilbert: return "hilbert";
    case Command::oracle: return "oracle";
  }
  return "?";
}

std::string JobSpec::to_json() const {
  json j;
  j["command"] = cli::to_string(command);
  auto put = [&](const char* k, const auto& v) {
    if (!v) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
      j[k] = *v;
    } else {
      j[k] = std::to_string(*v);
    }
  };
  put("f", f);
  put("m", m);
  put("n", n);
  put("l", l);
  put("D", D);
  put("d", d);
  put("a", a);
  put("c", c);
  put("mode", mode);
  put("cap", cap);
  put("emit_limit", emit_limit);
  put("tail", tail);
  put("h", h);
  put("i", i);
  put("input", input);
  if (force) j["force"] = true;
  j["output"] = output == OutputFormat::json ? "json" : "text";
  put("cache", cache_path);
  return j.dump();
}

std::string JobSpec::canonical() const {
  JobSpec s = *this;
  s.output = OutputFormat::json;
  s.cache_path.reset();
  json j = json::parse(s.to_json());
  j.erase("output");
  return j.dump();
}

JobSpec JobSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("job spec: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("job spec must be an object");
  if (!j.contains("command")) throw ParseError("job spec needs a command");
  JobSpec s;
  auto text_of = [&](const std::string& k, const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return v.dump();
    throw ParseError("job spec field " + k + " must be a string");
  };
  auto uint_of = [&](const std::string& k, const json& v) -> std::uint64_t {
    const auto x = parse_num(k, text_of(k, v)).to_uint64();
    if (!x) throw ParseError("job spec field " + k + " out of range");
    return *x;
  };
  auto small_of = [&](const std::string& k, const json& v) {
    const std::uint64_t x = uint_of(k, v);
    if (x > 1'000'000) throw ParseError("job spec field " + k + " out of range");
    return static_cast<unsigned>(x);
  };
  for (const auto& [k, v] : j.items()) {
    if (k == "command") s.command = parse_command(text_of(k, v));
    else if (k == "f") s.f = text_of(k, v);
    else if (k == "m") s.m = small_of(k, v);
    else if (k == "n") s.n = small_of(k, v);
    else if (k == "l") s.l = text_of(k, v);
    else if (k == "D") s.D = text_of(k, v);
    else if (k == "d") s.d = small_of(k, v);
    else if (k == "a") s.a = text_of(k, v);
    else if (k == "c") s.c = text_of(k, v);
    else if (k == "mode") s.mode = text_of(k, v);
    else if (k == "cap") s.cap = uint_of(k, v);
    else if (k == "emit_limit") s.emit_limit = uint_of(k, v);
    else if (k == "tail") s.tail = uint_of(k, v);
    else if (k == "h") s.h = uint_of(k, v);
    else if (k == "i") s.i = uint_of(k, v);
    else if (k == "input") s.input = text_of(k, v);
    else if (k == "cache") s.cache_path = text_of(k, v);
    else if (k == "force") {
      if (!v.is_boolean()) throw ParseError("job spec field force must be a boolean");
      s.force = v.get<bool>();
    } else if (k == "output") {
      const std::string o = text_of(k, v);
      if (o != "json" && o != "text") throw ParseError("output must be json or text");
      s.output = o == "json" ? OutputFormat::json : OutputFormat::text;
    } else {
      throw ParseError("unknown job spec field: " + k);
    }
  }
  return s;
}

JobSpec parse_args(int argc, const char* const* argv) {
  CLI::App app{"Antichain and Dicksonian sequence lengths, Ackermann bounds and Nullstellensatz reports",
               "nullbound"};
  app.require_subcommand(1);

  std::string f, l, D, a, c, mode, input, output = "json", cache;
  unsigned m = 0, n = 1, d = 0;
  std::uint64_t cap = 0, emit_limit = 0, tail = 0, h = 0, i = 0;
  bool force = false;

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  auto sub = [&](Command cmd, const char* help, std::string_view flags) {
    CLI::App* s = app.add_subcommand(to_string(cmd), help);
    auto has = [&](const char* name) { return flags.find(std::string(" ") + name + " ") != std::string_view::npos; };
    if (has("f")) s->add_option("--f", f, "growth function: pow2:L, geom:B:L, affine:P:Q, table:V1,V2,...");
    if (has("m")) s->add_option("--m", m, "number of coordinates");
    if (has("n")) s->add_option("--n", n, "number of components");
    if (has("l")) s->add_option("--l", l, "ell, the scale of f(i) = 2^i ell");
    if (has("D")) s->add_option("--D", D, cmd == Command::hilbert ? "degree" : "degree bound of the system");
    if (has("d")) s->add_option("--d", d, "number of padding coordinates");
    if (has("a")) s->add_option("--a", a, "the factor a of lexbound3");
    if (has("c")) s->add_option("--c", c, "the constant c, a positive rational");
    if (has("mode")) s->add_option("--mode", mode, "variant; see the README");
    if (has("cap")) s->add_option("--cap", cap, "length cap of the exhaustive search");
    if (has("emit")) s->add_option("--emit-limit", emit_limit, "tuples emitted before truncation");
    if (has("tail")) s->add_option("--tail", tail, "tuples shown after truncation");
    if (has("h")) s->add_option("--start", h, "starting degree h of fixed_degree searches");
    if (has("i")) s->add_option("--i", i, "prefix length");
    if (has("force")) s->add_flag("--force", force, "evaluate even if the hypothesis fails");
    if (has("input")) s->add_option("input", input, "sequence file, - for standard input");
    if (has("cache")) s->add_option("--cache", cache, "cache file (NULLBOUND_CACHE takes precedence)");
    s->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));
    subs.push_back({cmd, s});
  };
  sub(Command::length, "maximal antichain length", " f m n cache ");
  sub(Command::sequence, "stream the extremal sequence as JSON lines", " f m n emit tail ");
  sub(Command::bound, "closed-form Ackermann bound", " f m n d a mode force ");
  sub(Command::report, "T and the Nullstellensatz bound shape", " m n l D c mode ");
  sub(Command::verify, "check a sequence for the Dicksonian and antichain properties", " f m n input emit ");
  sub(Command::hilbert, "Hilbert-Samuel function of a sequence prefix", " f m n D i input emit ");
  sub(Command::oracle, "exhaustive search", " f m n mode cap h ");
  std::string job_file;
  CLI::App* job = app.add_subcommand("job", "run a JSON job spec");
  job->add_option("file", job_file, "job spec file")->required();

  std::vector<std::string> args;
  for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    throw HelpRequested{os.str()};
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    throw HelpRequested{os.str()};
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  if (job->parsed()) {
    std::ifstream in(job_file);
    if (!in) throw ParseError("cannot read " + job_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return JobSpec::from_json(buf.str());
  }

  JobSpec s;
  for (const auto& [cmd, a_] : subs) {
    if (!a_->parsed()) continue;
    s.command = cmd;
    auto given = [&](const char* name) {
      const CLI::Option* o = a_->get_option_no_throw(name);
      return o && o->count() > 0;
    };
    if (given("--f")) s.f = f;
    if (given("--m")) s.m = m;
    if (given("--n")) s.n = n;
    if (given("--l")) s.l = l;
    if (given("--D")) s.D = D;
    if (given("--d")) s.d = d;
    if (given("--a")) s.a = a;
    if (given("--c")) s.c = c;
    if (given("--mode")) s.mode = mode;
    if (given("--cap")) s.cap = cap;
    if (given("--emit-limit")) s.emit_limit = emit_limit;
    if (given("--tail")) s.tail = tail;
    if (given("--start")) s.h = h;
    if (given("--i")) s.i = i;
    if (given("input")) s.input = input;
    if (given("--cache")) s.cache_path = cache;
    s.force = force;
    s.output = output == "text" ? OutputFormat::text : OutputFormat::json;
  }
  return s;
}

std::optional<std::string> cache_file(const JobSpec& spec) {
  if (const char* env = std::getenv("NULLBOUND_CACHE"); env && *env) return std::string(env);
  return spec.cache_path;
}

int run(const JobSpec& spec, std::ostream& out, std::istream& in) {
  try {
    switch (spec.command) {
      case Command::length: return cmd_length(spec, out);
      case Command::sequence: return cmd_sequence(spec, out);
      case Command::bound: return cmd_bound(spec, out);
      case Command::report: return cmd_report(spec, out);
      case Command::verify: return cmd_verify(spec, out, in);
      case Command::hilbert: return cmd_hilbert(spec, out, in);
      case Command::oracle: return cmd_oracle(spec, out);
    }
    return kExitError;
  } catch (const ParseError& e) {
    return fail(spec, out, kExitParse, "parse", e.what());
  } catch (const json::exception& e) {
    return fail(spec, out, kExitParse, "parse", e.what());
  } catch (const Infeasible& e) {
    ojson coords = ojson::array();
    for (const auto& x : e.state().coords) coords.push_back(str(x));
    ojson extra = {{"partial_state", {{"counter", str(e.state().counter)}, {"coords", coords}}}};
    extra["component"] = e.component() ? ojson(str(*e.component())) : ojson(nullptr);
    return fail(spec, out, kExitInfeasible, "infeasible", e.what(), extra);
  } catch (const HypothesisViolated& e) {
    return fail(spec, out, kExitHypothesis, "hypothesis", e.what());
  } catch (const BudgetExceeded& e) {
    return fail(spec, out, kExitError, "budget", e.what());
  } catch (const Unsupported& e) {
    return fail(spec, out, kExitError, "unsupported", e.what());
  } catch (const PreconditionViolated& e) {
    return fail(spec, out, kExitError, "precondition", e.what());
  } catch (const InterpolationFailed& e) {
    return fail(spec, out, kExitError, "interpolation", e.what());
  } catch (const std::exception& e) {
    return fail(spec, out, kExitError, "internal", e.what());
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  JobSpec spec;
  try {
    spec = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const ParseError& e) {
    err << "nullbound: " << e.what() << "\n";
    ojson doc = {{"schema", kSchema}, {"error", "parse"}, {"message", e.what()}};
    out << doc.dump() << "\n";
    return kExitParse;
  }
  return run(spec, out, in);
}

}  // namespace nullbound::cli
