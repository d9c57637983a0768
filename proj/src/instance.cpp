#include "flipdist/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto end = text.find('\n');
    std::string_view raw = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (line.tokens.empty() || line.tokens.front().starts_with('#')) continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::syntax, "line " + std::to_string(line) + ": " + what, line);
}

template <typename Int>
Int parse_int(const Line& line, std::size_t index, const char* what) {
  const std::string_view token = line.tokens.at(index);
  Int value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    syntax_error(line.number, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  }
  return value;
}

class Cursor {
public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const noexcept { return next_ == lines_.size(); }
  const Line& peek() const { return lines_[next_]; }
  std::size_t last_line() const noexcept { return lines_.empty() ? 1 : lines_.back().number; }

  const Line& take(const char* expecting) {
    if (done()) syntax_error(last_line(), std::string("unexpected end of input, expected ") + expecting);
    return lines_[next_++];
  }

  /// "<keyword> <count>"
  std::size_t section(std::string_view keyword) {
    const Line& line = take(std::string(keyword).c_str());
    if (line.tokens.size() != 2 || line.tokens[0] != keyword) {
      syntax_error(line.number, "expected '" + std::string(keyword) + " <count>'");
    }
    return parse_int<std::size_t>(line, 1, "a count");
  }

private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
};

std::vector<std::array<std::uint32_t, 3>> read_triangles(Cursor& in, std::string_view keyword) {
  const std::size_t count = in.section(keyword);
  std::vector<std::array<std::uint32_t, 3>> tris;
  tris.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Line& line = in.take("a triangle 'a b c'");
    if (line.tokens.size() != 3) syntax_error(line.number, "expected three vertex indices");
    tris.push_back({parse_int<std::uint32_t>(line, 0, "a vertex index"),
                    parse_int<std::uint32_t>(line, 1, "a vertex index"),
                    parse_int<std::uint32_t>(line, 2, "a vertex index")});
  }
  return tris;
}

Triangulation build_named(const std::shared_ptr<const PointSet>& points,
                          const std::vector<std::array<std::uint32_t, 3>>& raw, const char* name) {
  std::vector<Triangle> tris;
  tris.reserve(raw.size());
  for (const auto& t : raw) tris.push_back(Triangle{t});
  try {
    return Triangulation::build(points, tris);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + " triangulation: " + e.what());
  }
}

}  // namespace

InstanceFile parse_instance_file(std::string_view text) {
  Cursor in(tokenize(text));
  {
    const Line& header = in.take("header 'flipdist v1'");
    if (header.tokens.size() != 2 || header.tokens[0] != "flipdist" || header.tokens[1] != "v1") {
      syntax_error(header.number, "expected header 'flipdist v1'");
    }
  }
  InstanceFile file;
  const std::size_t n = in.section("points");
  file.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = in.take("a point 'x y'");
    if (line.tokens.size() != 2) syntax_error(line.number, "expected two coordinates");
    file.points.push_back({parse_int<std::int32_t>(line, 0, "a 32-bit integer coordinate"),
                           parse_int<std::int32_t>(line, 1, "a 32-bit integer coordinate")});
  }
  file.initial = read_triangles(in, "initial");
  file.final = read_triangles(in, "final");
  if (!in.done()) {
    const Line& line = in.take("k");
    if (line.tokens.size() != 2 || line.tokens[0] != "k") syntax_error(line.number, "expected 'k <value>'");
    file.k = parse_int<std::uint32_t>(line, 1, "a non-negative k");
  }
  if (!in.done()) syntax_error(in.peek().number, "trailing content");
  return file;
}

Instance validate_instance(InstanceFile file) {
  auto points = PointSet::create(file.points);
  Triangulation initial = build_named(points, file.initial, "initial");
  Triangulation target = build_named(points, file.final, "final");
  return Instance{std::move(file), std::move(initial), std::move(target)};
}

std::string render_instance(const InstanceFile& file) {
  std::ostringstream out;
  out << "flipdist v1\n";
  out << "points " << file.points.size() << "\n";
  for (const auto& p : file.points) out << p[0] << " " << p[1] << "\n";
  for (const auto* section : {&file.initial, &file.final}) {
    out << (section == &file.initial ? "initial " : "final ") << section->size() << "\n";
    for (const auto& t : *section) out << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  if (file.k) out << "k " << *file.k << "\n";
  return out.str();
}

std::optional<HullShape> parse_hull_shape(std::string_view name) {
  if (name == "scatter" || name == "random") return HullShape::scatter;
  if (name == "polygon" || name == "convex") return HullShape::polygon;
  return std::nullopt;
}

const char* to_string(HullShape shape) noexcept {
  return shape == HullShape::polygon ? "polygon" : "scatter";
}

std::vector<std::array<std::uint32_t, 3>> triangle_list(const Triangulation& t) {
  std::vector<std::array<std::uint32_t, 3>> out;
  for (const Triangle& tri : t.triangles()) out.push_back(tri.v);
  return out;
}

Triangulation incremental_triangulation(std::shared_ptr<const PointSet> points) {
  const PointSet& ps = *points;
  if (ps.degenerate()) {
    throw Error(ErrorCode::degenerate_point_set, "fewer than 3 points or all points collinear");
  }
  std::vector<PointId> order(ps.size());
  for (PointId i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    return ps[a].x != ps[b].x ? ps[a].x < ps[b].x : ps[a].y < ps[b].y;
  });

  // Leading collinear run, then fan it to the first point off the line.
  std::size_t first_off = 2;
  while (orientation(ps[order[0]], ps[order[1]], ps[order[first_off]]) == Orientation::collinear) {
    ++first_off;
  }
  const PointId apex = order[first_off];
  std::vector<Triangle> tris;
  for (std::size_t i = 0; i + 1 < first_off; ++i) tris.push_back(Triangle::make(order[i], order[i + 1], apex));

  // Counterclockwise hull of what has been inserted so far.
  std::vector<PointId> hull;
  if (orientation(ps[order[0]], ps[order[first_off - 1]], ps[apex]) == Orientation::left) {
    for (std::size_t i = 0; i < first_off; ++i) hull.push_back(order[i]);
    hull.push_back(apex);
  } else {
    hull.push_back(apex);
    for (std::size_t i = first_off; i-- > 0;) hull.push_back(order[i]);
  }

  for (std::size_t idx = first_off + 1; idx < order.size(); ++idx) {
    const PointId p = order[idx];
    const std::size_t h = hull.size();
    std::vector<bool> visible(h);
    for (std::size_t i = 0; i < h; ++i) {
      visible[i] = orientation(ps[hull[i]], ps[hull[(i + 1) % h]], ps[p]) == Orientation::right;
    }
    std::size_t start = 0;
    while (!(visible[start] && !visible[(start + h - 1) % h])) ++start;
    std::vector<PointId> next{p};
    std::size_t i = start;
    while (visible[i % h]) {
      tris.push_back(Triangle::make(hull[i % h], hull[(i + 1) % h], p));
      ++i;
    }
    // hull[i % h] is the last vertex of the visible chain; walk round to hull[start].
    for (std::size_t j = i; j <= start + h; ++j) next.push_back(hull[j % h]);
    hull = std::move(next);
  }
  return Triangulation::build(std::move(points), tris);
}

Instance generate_instance(const GeneratorOptions& options) {
  if (options.n < 3) throw Error(ErrorCode::invalid_argument, "need at least 3 points");
  std::mt19937_64 rng(options.seed);
  std::vector<std::array<std::int32_t, 2>> coords;

  auto has_collinear_triple = [&](const std::array<std::int32_t, 2>& c) {
    const Point p{0, c[0], c[1]};
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const Point a{0, coords[i][0], coords[i][1]};
      if (a == p) return true;
      for (std::size_t j = i + 1; j < coords.size(); ++j) {
        if (orientation(a, Point{0, coords[j][0], coords[j][1]}, p) == Orientation::collinear) return true;
      }
    }
    return false;
  };

  constexpr int max_attempts = 10'000;
  if (options.shape == HullShape::scatter) {
    const std::int32_t range = static_cast<std::int32_t>(4 * options.n + 8);
    std::uniform_int_distribution<std::int32_t> coord(0, range - 1);
    for (int attempt = 0; coords.size() < options.n; ++attempt) {
      if (attempt == max_attempts) {
        throw Error(ErrorCode::invalid_argument, "cannot place points in general position");
      }
      const std::array<std::int32_t, 2> c{coord(rng), coord(rng)};
      if (!has_collinear_triple(c)) coords.push_back(c);
    }
  } else {
    const double radius = 1000.0 + 50.0 * options.n;
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    for (int attempt = 0;; ++attempt) {
      if (attempt == max_attempts) {
        throw Error(ErrorCode::invalid_argument, "cannot place points in convex position");
      }
      std::vector<double> angles(options.n);
      for (double& a : angles) a = angle(rng);
      std::sort(angles.begin(), angles.end());
      coords.clear();
      bool ok = true;
      for (double a : angles) {
        const std::array<std::int32_t, 2> c{static_cast<std::int32_t>(std::lround(radius * std::cos(a))),
                                            static_cast<std::int32_t>(std::lround(radius * std::sin(a)))};
        if (has_collinear_triple(c)) {
          ok = false;
          break;
        }
        coords.push_back(c);
      }
      if (ok && PointSet::create(coords)->hull_size() == options.n) break;
    }
  }

  auto points = PointSet::create(coords);
  Triangulation initial = incremental_triangulation(points);
  Triangulation target = initial;
  std::optional<Edge> last_created;
  for (std::uint32_t i = 0; i < options.scramble; ++i) {
    // Never undo the previous flip straight away.
    std::vector<Edge> admissible;
    for (const Edge& e : target.edges()) {
      if (target.is_admissible(e) && e != last_created) admissible.push_back(e);
    }
    if (admissible.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
    FlipResult r = target.flip(admissible[pick(rng)]);
    target = std::move(r.triangulation);
    last_created = r.created;
  }

  InstanceFile file{coords, triangle_list(initial), triangle_list(target), std::nullopt};
  return Instance{std::move(file), std::move(initial), std::move(target)};
}

}  // namespace flipdist
