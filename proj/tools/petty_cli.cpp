// petty_cli: verification campaigns and symmetrization traces for the
// Petty projection inequality toolkit.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "petty.hpp"
#include "petty/io.hpp"

namespace fs = std::filesystem;
using namespace petty;

namespace {

enum Exit { kPass = 0, kBudget = 1, kInput = 2, kNumerical = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input:
    case ErrorKind::invalid_body:
    case ErrorKind::not_volume_preserving:
    case ErrorKind::unsupported_direction:
    case ErrorKind::domain:
      return kInput;
    default:
      return kNumerical;
  }
}

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  std::optional<std::uint64_t> seed;
  int grid_n{kDefaultCircleNodes};
  double tol{1e-9};
  int max_steps{500};
  double stop_tol{0.05};
  bool exploratory{false};
  std::string policy{"cap-cover-greedy"};
  int candidates{kDefaultCandidates};
  std::optional<int> count;
  int trials{100};
  std::string corpus{"polygon"};
  int axis{0};
  int points{100};
  double grad_tol{1e-5};
  std::vector<double> matrix;
  int jobs{0};
};

RunConfig config_of(const std::string& command, const Options& o, int dim) {
  RunConfig c;
  c.command = command;
  c.inputs = o.inputs;
  c.dimension = dim;
  c.grid_n = o.grid_n;
  c.policy = command == "converge" ? o.policy : "";
  c.seed = o.seed;
  c.count = o.count.value_or(0);
  c.trials = command == "affine" ? o.trials : 0;
  c.candidates = command == "converge" ? o.candidates : 0;
  c.tol = o.tol;
  c.max_steps = command == "converge" ? o.max_steps : 0;
  c.stop_tol = command == "converge" ? o.stop_tol : 0.0;
  c.exploratory = o.exploratory;
  c.out = o.out;
  return c;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) fail(ErrorKind::invalid_input, o.out + ": cannot open for writing");
  f << text;
}

std::uint64_t need_seed(const Options& o) {
  if (!o.seed) fail(ErrorKind::invalid_input, "--seed is required for randomized commands");
  return *o.seed;
}

/// Expands directories into their *.json files, sorted by name.
std::vector<std::string> expand_inputs(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& p : in) {
    if (fs::is_directory(p)) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

/// Runs f(i) for i in [0, n) on worker threads; results keep index order and
/// the error of the lowest failing index is rethrown.
template <typename R, typename F>
std::vector<R> parallel_map(int n, int jobs, F f) {
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  const int workers = std::max(1, std::min(n, jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency())));
  auto work = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(f(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<R> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

/// Corpus from --input files, or `count` random sets of the --corpus kind.
struct Corpus {
  std::vector<std::string> files;
  int count{0};
  std::string kind;
  std::uint64_t seed{0};

  int size() const { return files.empty() ? count : static_cast<int>(files.size()); }

  AnySet get(int i, Rng& rng) const {
    if (!files.empty()) return load_set(files[static_cast<std::size_t>(i)]);
    if (kind == "polygon") return random_star_polygon(rng);
    if (kind == "box2") return random_box_union(rng, 2);
    return random_box_union(rng, 3);
  }
};

Corpus make_corpus(const Options& o, int default_count) {
  Corpus c;
  c.files = expand_inputs(o.inputs);
  if (!o.inputs.empty() && c.files.empty()) fail(ErrorKind::invalid_input, "no input files found");
  if (c.files.empty()) {
    if (o.corpus != "polygon" && o.corpus != "box2" && o.corpus != "box3")
      fail(ErrorKind::invalid_input, "--corpus must be polygon, box2 or box3");
    c.kind = o.corpus;
    c.count = o.count.value_or(default_count);
    if (c.count < 1) fail(ErrorKind::invalid_input, "corpus size must be at least 1");
    c.seed = need_seed(o);
  } else if (o.seed) {
    c.seed = *o.seed;
  }
  return c;
}

/// Random u with no boundary mass orthogonal to it (zero vertical boundary
/// measure in the frame with last axis u).
Direction conforming_direction(const PolygonSet& e, Rng& rng, std::int64_t& resamples) {
  for (std::int64_t k = 0; k < kResampleBudget; ++k) {
    const Direction u = random_direction(rng, 2);
    if (vertical_boundary_measure(e, RigidFrame::with_last_axis(u)) == 0.0) return u;
    ++resamples;
  }
  fail(ErrorKind::pathological_input, "no conforming direction within the resample budget");
}

const PolygonSet& polygon_of(const AnySet& s, const std::string& what) {
  if (!std::holds_alternative<PolygonSet>(s)) fail(ErrorKind::invalid_input, what + " needs a polygon input");
  return std::get<PolygonSet>(s);
}

void check_tol(double t, const char* name) {
  if (!(t > 0.0)) fail(ErrorKind::invalid_input, std::string(name) + " must be positive");
}

// ---------------------------------------------------------------------------

int cmd_petty(const Options& o) {
  if (o.inputs.size() != 1) fail(ErrorKind::invalid_input, "petty takes exactly one --input file");
  const double tol = o.tol;
  check_tol(tol, "--tol");
  const AnySet s = load_set(o.inputs[0]);
  const PettyReport r =
      std::visit([](const auto& e) { return petty_product(e); }, s);
  nlohmann::json j = to_json(r);
  j["config"] = to_json(config_of("petty", o, r.dim));
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!o.out.empty()) emit(o, text);
  return r.slack >= -tol ? kPass : kNumerical;
}

struct MonoRow {
  int dim;
  VecN u;
  double before, after;
  std::int64_t resamples;
  bool exploratory;  // axis frame of a box-union: reported, never gating
};

int cmd_monotonicity(const Options& o) {
  const double tol = o.tol;
  check_tol(tol, "--tol");
  const Corpus corpus = make_corpus(o, 200);
  if (!corpus.files.empty() && !o.seed) {
    // Polygon inputs draw their direction at random.
    for (const auto& f : corpus.files)
      if (std::holds_alternative<PolygonSet>(load_set(f))) need_seed(o);
  }
  if (corpus.files.empty() && corpus.kind != "polygon" && !o.exploratory)
    fail(ErrorKind::invalid_input, "box-union corpora carry boundary mass orthogonal to every axis; pass --exploratory");

  const auto rows = parallel_map<MonoRow>(corpus.size(), o.jobs, [&](int i) {
    Rng rng(corpus.seed, static_cast<std::uint64_t>(i));
    const AnySet s = corpus.get(i, rng);
    if (const auto* p = std::get_if<PolygonSet>(&s)) {
      MonoRow r{2, VecN(2), 0.0, 0.0, 0, false};
      const Direction u = conforming_direction(*p, rng, r.resamples);
      r.u = u.vec();
      r.before = petty_product(*p).product;
      r.after = petty_product(steiner_symmetrize(*p, u)).product;
      return r;
    }
    const BoxUnion& e = std::get<BoxUnion>(s);
    if (!o.exploratory)
      fail(ErrorKind::invalid_input, "box-union input carries boundary mass orthogonal to the axis; pass --exploratory");
    const int axis = o.axis > 0 ? o.axis - 1 : e.dim() - 1;
    if (axis >= e.dim()) fail(ErrorKind::invalid_input, "--axis exceeds the set dimension");
    const Direction u = Direction::axis(e.dim(), axis);
    return MonoRow{e.dim(), u.vec(), petty_product(e).product, petty_product(steiner_symmetrize(e, u)).product, 0,
                   true};
  });

  int dim = 2;
  for (const auto& r : rows) dim = std::max(dim, r.dim);
  std::vector<std::string> cols{"set_id"};
  for (int k = 1; k <= dim; ++k) cols.push_back("u_" + std::to_string(k));
  for (const char* c : {"product_before", "product_after", "margin", "resamples", "frame"}) cols.emplace_back(c);
  CsvWriter csv(config_of("monotonicity", o, dim), cols);
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    auto row = csv.row();
    row << i;
    for (int k = 0; k < dim; ++k) row << (k < r.dim ? format_double(r.u[k]) : std::string());
    row << r.before << r.after << (r.after - r.before) << static_cast<long long>(r.resamples)
        << (r.exploratory ? "exploratory" : "generic");
    ok = ok && (r.exploratory || r.after - r.before >= -tol);
  }
  emit(o, csv.str());
  return ok ? kPass : kNumerical;
}

int cmd_converge(const Options& o) {
  if (o.inputs.size() != 1) fail(ErrorKind::invalid_input, "converge takes exactly one --input file");
  check_tol(o.stop_tol, "--stop-tol");
  if (o.max_steps < 0) fail(ErrorKind::invalid_input, "--max-steps must be non-negative");
  const AnySet input = load_set(o.inputs[0]);
  const PolygonSet& e0 = polygon_of(input, "converge");
  DirectionPolicy policy{parse_policy(o.policy), need_seed(o), o.candidates};
  const SymmetrizationTrace tr = run_symmetrization(e0, policy, o.max_steps, o.stop_tol);

  CsvWriter csv(config_of("converge", o, 2), {"step", "u_1", "u_2", "volume", "perimeter", "circumradius",
                                              "petty_product", "dh_to_ball", "resamples"});
  for (const auto& s : tr.steps) {
    auto row = csv.row();
    row << s.step;
    if (s.u) row << (*s.u)[0] << (*s.u)[1];
    else row << "" << "";
    row << s.volume << s.perimeter << s.circumradius << s.petty_product << s.dh_to_ball
        << static_cast<long long>(s.resamples);
  }
  emit(o, csv.str());
  return tr.converged ? kPass : kBudget;
}

int cmd_affine(const Options& o) {
  if (o.inputs.size() != 1) fail(ErrorKind::invalid_input, "affine takes exactly one --input file");
  const double tol = o.tol;
  check_tol(tol, "--tol");
  if (o.trials < 0) fail(ErrorKind::invalid_input, "--trials must be non-negative");
  const AnySet input = load_set(o.inputs[0]);
  const PolygonSet& p = polygon_of(input, "affine");
  std::vector<Mat2> maps;
  if (!o.matrix.empty()) {
    if (o.matrix.size() != 4) fail(ErrorKind::invalid_input, "--matrix needs four entries a,b,c,d");
    maps.push_back({o.matrix[0], o.matrix[1], o.matrix[2], o.matrix[3]});
  }
  if (o.trials > 0) {
    Rng rng(need_seed(o));
    for (int t = 0; t < o.trials; ++t) maps.push_back(random_sl2(rng));
  }
  const SphericalGrid grid = circle_grid(o.grid_n);
  const double before = petty_product(p).product;
  CsvWriter csv(config_of("affine", o, 2),
                {"trial", "a", "b", "c", "d", "discrepancy", "product_before", "product_after", "product_rel_change"});
  bool ok = true;
  for (std::size_t t = 0; t < maps.size(); ++t) {
    const Mat2& a = maps[t];
    const double d = affine_image_check(p, a, grid);
    const double after = petty_product(p.transformed(a)).product;
    const double rel = std::abs(after - before) / before;
    csv.row() << t << a.a << a.b << a.c << a.d << d << before << after << rel;
    ok = ok && d <= tol && rel <= tol;
  }
  emit(o, csv.str());
  return ok ? kPass : kNumerical;
}

struct CheckRow {
  std::string check;
  double param, lhs, rhs, error;
  bool ok;
};

int cmd_coarea(const Options& o) {
  const double tol = o.tol;
  check_tol(tol, "--tol");
  check_tol(o.grad_tol, "--grad-tol");
  if (o.points < 0) fail(ErrorKind::invalid_input, "--points must be non-negative");
  Options po = o;
  po.corpus = "polygon";
  const Corpus corpus = make_corpus(po, 20);
  if (o.points > 0) need_seed(o);

  const auto results = parallel_map<std::vector<CheckRow>>(corpus.size(), o.jobs, [&](int i) {
    Rng rng(corpus.seed, static_cast<std::uint64_t>(i));
    const AnySet s = corpus.get(i, rng);
    const PolygonSet& p = polygon_of(s, "coarea-check");
    std::vector<CheckRow> rows;
    double ylo = p.vertex(0).y, yhi = ylo, xlo = p.vertex(0).x, xhi = xlo;
    for (const auto& v : p.vertices()) {
      ylo = std::min(ylo, v.y);
      yhi = std::max(yhi, v.y);
      xlo = std::min(xlo, v.x);
      xhi = std::max(xhi, v.x);
    }
    const double ymid = 0.5 * (ylo + yhi);
    const std::pair<const char*, ScalarField> fields[] = {
        {"constant", ScalarField::constant(1.0)},
        {"x_squared", ScalarField::x_squared()},
        {"half_plane", ScalarField::half_plane({0.0, 1.0}, ymid)}};
    for (const auto& [name, g] : fields) {
      const CoareaResult c = coarea_check(p, g);
      const double err = std::abs(c.lhs - c.rhs) / std::max(1.0, std::abs(c.lhs));
      rows.push_back({name, name == std::string("half_plane") ? ymid : 0.0, c.lhs, c.rhs, err, err <= tol});
    }
    // Section-length gradient against central differences.
    const double h = 1e-7 * (xhi - xlo);
    const RigidFrame id = RigidFrame::identity(2);
    int done = 0;
    for (int tries = 0; done < o.points && tries < 100 * o.points; ++tries) {
      const double x = rng.uniform(xlo, xhi);
      bool generic = x - 10.0 * h > xlo && x + 10.0 * h < xhi;
      for (const auto& v : p.vertices()) generic = generic && std::abs(v.x - x) > 10.0 * h;
      if (!generic) continue;
      const double g = section_length_gradient(p, x, id);
      const double fd = (section_length(p, x + h, id) - section_length(p, x - h, id)) / (2.0 * h);
      const double err = std::abs(g - fd);
      rows.push_back({"gradient", x, g, fd, err, err <= o.grad_tol});
      ++done;
    }
    return rows;
  });

  CsvWriter csv(config_of("coarea-check", o, 2), {"set_id", "check", "param", "lhs", "rhs", "error"});
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i)
    for (const auto& r : results[i]) {
      csv.row() << i << r.check << r.param << r.lhs << r.rhs << r.error;
      ok = ok && r.ok;
    }
  emit(o, csv.str());
  return ok ? kPass : kNumerical;
}

struct InclusionRow {
  Vec2 u;
  double worst;
  bool holds;
  std::int64_t resamples;
};

int cmd_lemma54(const Options& o) {
  Options po = o;
  po.corpus = "polygon";
  const Corpus corpus = make_corpus(po, 50);
  need_seed(o);
  if (o.grid_n < 3) fail(ErrorKind::invalid_input, "--grid-n must be at least 3");
  const SphericalGrid grid = circle_grid(o.grid_n);
  const auto rows = parallel_map<InclusionRow>(corpus.size(), o.jobs, [&](int i) {
    Rng rng(corpus.seed, static_cast<std::uint64_t>(i));
    const AnySet s = corpus.get(i, rng);
    const PolygonSet& p = polygon_of(s, "lemma54-check");
    InclusionRow r{{}, 0.0, false, 0};
    const Direction u = conforming_direction(p, rng, r.resamples);
    const PolarInclusionReport rep = polar_steiner_inclusion_check(p, u, grid);
    r.u = u.xy();
    r.worst = rep.worst_margin;
    r.holds = rep.holds;
    return r;
  });
  CsvWriter csv(config_of("lemma54-check", o, 2), {"set_id", "u_1", "u_2", "worst_ratio", "holds", "resamples"});
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv.row() << i << r.u.x << r.u.y << r.worst << (r.holds ? "true" : "false") << static_cast<long long>(r.resamples);
    ok = ok && r.holds;
  }
  emit(o, csv.str());
  return ok ? kPass : kNumerical;
}

void add_common(CLI::App* c, Options& o) {
  c->add_option("--input", o.inputs, "Set description file(s) or directories");
  c->add_option("--out", o.out, "Output path (default: stdout)");
  c->add_option("--seed", o.seed, "RNG seed");
  c->add_option("--grid-n", o.grid_n, "Number of circle grid directions");
  c->add_option("--tol", o.tol, "Pass tolerance");
  c->add_flag("--exploratory", o.exploratory, "Allow sets violating the generic frame condition");
  c->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petty projection inequality toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolkitVersion);
  Options o;

  auto* petty = app.add_subcommand("petty", "Petty product and bound for one set");
  auto* mono = app.add_subcommand("monotonicity", "Product before and after Steiner symmetrization");
  auto* conv = app.add_subcommand("converge", "Symmetrization trace toward the ball");
  auto* affine = app.add_subcommand("affine", "SL(2) equivariance of the projection body");
  auto* coarea = app.add_subcommand("coarea-check", "Co-area identity and section-length gradient");
  auto* l54 = app.add_subcommand("lemma54-check", "Polar projection body inclusion under symmetrization");
  for (auto* c : {petty, mono, conv, affine, coarea, l54}) add_common(c, o);
  for (auto* c : {mono, coarea, l54}) {
    c->add_option("--count", o.count, "Random corpus size");
    c->add_option("--corpus", o.corpus, "Random corpus kind: polygon, box2, box3");
  }
  mono->add_option("--axis", o.axis, "Box-union symmetrization axis (1-based, default n)");
  conv->add_option("--policy", o.policy, "uniform-random, coordinate-cycle or cap-cover-greedy");
  conv->add_option("--candidates", o.candidates, "Cap-cover-greedy candidate count");
  conv->add_option("--max-steps", o.max_steps, "Step budget");
  conv->add_option("--stop-tol", o.stop_tol, "Stop when d_H / r <= this");
  affine->add_option("--trials", o.trials, "Random SL(2) maps");
  affine->add_option("--matrix", o.matrix, "Extra map a,b,c,d (row-major)")->delimiter(',');
  coarea->add_option("--points", o.points, "Gradient sample abscissae per polygon");
  coarea->add_option("--grad-tol", o.grad_tol, "Gradient tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInput;
  }

  try {
    if (*petty) return cmd_petty(o);
    if (*mono) return cmd_monotonicity(o);
    if (*conv) return cmd_converge(o);
    if (*affine) return cmd_affine(o);
    if (*coarea) return cmd_coarea(o);
    if (*l54) return cmd_lemma54(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kInput;
}
