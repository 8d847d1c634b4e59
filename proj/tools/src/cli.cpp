#include "pg4/cli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "pg4/io.hpp"
#include "pg4/quadric.hpp"
#include "pg4/recognize.hpp"
#include "pg4/spectrum.hpp"

namespace pg4::cli {

namespace {

constexpr std::uint32_t kDefaultQMax = 16;

struct Config {
  std::uint32_t q = 0;
  std::string modulus;
  unsigned workers = 0;
  std::size_t witness_cap = kDefaultWitnessCap;
  std::string out;
  std::string input = "-";
  std::string kind;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint32_t parse_hex_u32(const std::string& text) {
  std::string_view s = text;
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("--modulus: '" + text + "' is not a hex polynomial");
  }
  return v;
}

std::uint32_t q_max() {
  const char* env = std::getenv("GEOM_Q_MAX");
  if (!env || !*env) return kDefaultQMax;
  std::uint32_t v = 0;
  const std::string_view s = env;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("GEOM_Q_MAX='" + std::string(s) + "' is not an integer");
  }
  return v;
}

GaloisField make_field(const Config& c) {
  if (c.q < 2 || !std::has_single_bit(c.q)) throw ConfigError("--q must be a power of two, q >= 2");
  if (const auto limit = q_max(); c.q > limit) {
    throw ConfigError("q=" + std::to_string(c.q) + " exceeds GEOM_Q_MAX=" + std::to_string(limit));
  }
  const auto degree = static_cast<unsigned>(std::countr_zero(c.q));
  if (c.modulus.empty()) return GaloisField(degree);
  return GaloisField(degree, parse_hex_u32(c.modulus));
}

// Data sink: --out file if given, else the caller's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ConfigError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw ConfigError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

template <class Fn>
auto with_input(const Config& c, std::istream& stdin_stream, Fn&& fn) {
  if (c.input == "-") return fn(stdin_stream);
  std::ifstream file(c.input, std::ios::binary);
  if (!file) throw ConfigError("cannot open '" + c.input + "'");
  return fn(file);
}

void emit(Sink& sink, const io::Json& doc) {
  *sink << doc.dump(2) << '\n';
  sink.finish();
}

int cmd_gen(const Config& c, std::ostream& out, std::ostream& err) {
  Geometry geometry(make_field(c), c.workers);
  const GaloisField& field = geometry.field();
  std::vector<std::uint32_t> items;
  bool solids = true;
  if (c.kind == "elliptic-solids") {
    items = solids_by_section(geometry, standard_parabolic(field)).elliptic;
  } else if (c.kind == "hyperoval-solids") {
    items = solids_disjoint_from(geometry, regular_hyperoval(field));
  } else if (c.kind == "quadric-points") {
    items = zero_set(geometry, standard_parabolic(field)).indices();
    solids = false;
  } else {
    for (const auto& p : regular_hyperoval(field).points) items.push_back(geometry.index_of(p));
    std::sort(items.begin(), items.end());
    solids = false;
  }

  Sink sink(c.out, out);
  if (solids) {
    io::write_solids(geometry, items, *sink);
  } else {
    io::write_points(geometry, items, *sink);
  }
  sink.finish();

  io::Json census;
  census["kind"] = c.kind;
  census["q"] = c.q;
  census["count"] = items.size();
  // stdout carries the data unless it went to a file
  (c.out.empty() ? err : out) << census.dump() << '\n';
  return kOk;
}

int cmd_check(const Config& c, std::istream& in, std::ostream& out, std::ostream&) {
  Geometry geometry(make_field(c), c.workers);
  const SolidSet s = with_input(c, in, [&](std::istream& is) { return io::read_solid_set(geometry, is); });
  const ConditionReport report = check_conditions(geometry, s, c.witness_cap);
  Sink sink(c.out, out);
  emit(sink, io::to_json(geometry, report));
  return report.cond_i && report.cond_ii ? kOk : kFailed;
}

int cmd_classify(const Config& c, std::istream& in, std::ostream& out, std::ostream&) {
  Geometry geometry(make_field(c), c.workers);
  const SolidSet s = with_input(c, in, [&](std::istream& is) { return io::read_solid_set(geometry, is); });
  const Verdict v = classify(geometry, s, c.witness_cap);
  Sink sink(c.out, out);
  emit(sink, io::to_json(geometry, v));
  return v.not_applicable() ? kFailed : kOk;
}

int cmd_verify(const Config& c, std::istream& in, std::ostream& out, std::ostream& err) {
  Geometry geometry(make_field(c), c.workers);
  const SolidSet s = with_input(c, in, [&](std::istream& is) { return io::read_solid_set(geometry, is); });
  Sink sink(c.out, out);
  try {
    const LemmaReport report = verify_lemma_suite(geometry, s);
    emit(sink, io::to_json(report));
    return report.all_pass() ? kOk : kFailed;
  } catch (const PreconditionError& e) {
    err << "pg4: " << e.what() << '\n';
    emit(sink, io::to_json(geometry, check_conditions(geometry, s, c.witness_cap)));
    return kFailed;
  }
}

int cmd_fit(const Config& c, std::istream& in, std::ostream& out, std::ostream&) {
  Geometry geometry(make_field(c), c.workers);
  const Bitset points = with_input(c, in, [&](std::istream& is) { return io::read_point_set(geometry, is); });
  const auto form = fit_quadric(geometry, points);

  io::Json doc;
  doc["q"] = c.q;
  doc["size"] = points.count();
  doc["form"] = form ? io::to_json(*form) : io::Json(nullptr);
  doc["nucleus"] = nullptr;
  if (form) {
    try {
      doc["nucleus"] = nucleus(geometry.field(), *form).to_string();
    } catch (const SingularFormError&) {
      // a fitted cone or degenerate quadric has no single nucleus
    }
  }
  Sink sink(c.out, out);
  emit(sink, doc);
  return form ? kOk : kFailed;
}

int cmd_spectrum(const Config& c, std::istream& in, std::ostream& out, std::ostream&) {
  Geometry geometry(make_field(c), c.workers);
  const SolidSet s = with_input(c, in, [&](std::istream& is) { return io::read_solid_set(geometry, is); });
  io::Json doc;
  doc["q"] = c.q;
  doc["size"] = s.size();
  const auto e = e_value(c.q, s.size());
  doc["e"] = e ? io::Json(*e) : io::Json(nullptr);
  doc["points"] = io::to_json(spectrum_of(point_counts(geometry, s)));
  doc["planes"] = io::to_json(spectrum_of(plane_counts(geometry, s)));
  doc["lines"] = io::to_json(spectrum_of(line_counts(geometry, s)));
  Sink sink(c.out, out);
  emit(sink, doc);
  return kOk;
}

void add_common(CLI::App& sub, Config& c) {
  sub.add_option("--q", c.q, "field order, a power of two")->required();
  sub.add_option("--modulus", c.modulus, "irreducible modulus as hex bits, e.g. 0x13 for x^4+x+1");
  sub.add_option("--workers", c.workers, "worker threads (0 = all cores)");
  sub.add_option("--witness-cap", c.witness_cap, "maximum violations listed in reports");
  sub.add_option("--out", c.out, "write data here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solid sets of PG(4,q), q even: generation, checks and classification", "pg4"};
  app.require_subcommand(1);
  Config c;

  auto* gen = app.add_subcommand("gen", "write a generated family as JSONL");
  gen->add_option("kind", c.kind, "what to generate")
      ->required()
      ->check(CLI::IsMember({"elliptic-solids", "hyperoval-solids", "quadric-points", "hyperoval-points"}));
  add_common(*gen, c);

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub readers[] = {
      {"check", "report conditions (I), (II), (III) for a solid set"},
      {"classify", "classify a solid set by explicit reconstruction"},
      {"verify-lemmas", "run the counting-lemma suite on a solid set"},
      {"fit-quadric", "fit a quadric to a point set"},
      {"spectrum", "point, plane and line count spectra of a solid set"},
  };
  for (const auto& r : readers) {
    auto* sub = app.add_subcommand(r.name, r.help);
    sub->add_option("input", c.input, "JSONL input file, '-' for stdin");
    add_common(*sub, c);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "gen") return cmd_gen(c, out, err);
    if (name == "check") return cmd_check(c, in, out, err);
    if (name == "classify") return cmd_classify(c, in, out, err);
    if (name == "verify-lemmas") return cmd_verify(c, in, out, err);
    if (name == "fit-quadric") return cmd_fit(c, in, out, err);
    return cmd_spectrum(c, in, out, err);
  } catch (const ConfigError& e) {
    err << "pg4: " << e.what() << '\n';
  } catch (const io::InputError& e) {
    err << "pg4: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {  // FieldError, GeometryError
    err << "pg4: " << e.what() << '\n';
  } catch (const ResourceError& e) {
    err << "pg4: " << e.what() << '\n';
  }
  return kBadInput;
}

}  // namespace pg4::cli
