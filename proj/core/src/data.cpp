#include "hcube/data.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <Eigen/QR>

#include "hcube/error.hpp"
#include "hcube/rng.hpp"
#include "json.hpp"

namespace hcube {
namespace {

constexpr char kPointsMagic[4] = {'H', 'C', 'P', 'S'};
constexpr char kCodesMagic[4] = {'H', 'C', 'B', 'C'};
constexpr char kOperatorMagic[4] = {'H', 'C', 'O', 'P'};

class ByteWriter {
 public:
  void magic(const char (&m)[4]) { bytes_.append(m, 4); }
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const std::vector<std::uint8_t>& b) { bytes_.append(b.begin(), b.end()); }
  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  ByteReader(const std::string& bytes, std::string what) : bytes_(bytes), what_(std::move(what)) {}

  void expect_magic(const char (&m)[4]) {
    need(4);
    if (bytes_.compare(pos_, 4, m, 4) != 0) {
      throw LoadError(what_ + ": bad magic, expected \"" + std::string(m, 4) + "\"");
    }
    pos_ += 4;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<std::uint8_t>(bytes_[pos_++])} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<std::uint8_t>(bytes_[pos_++])} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<std::uint8_t> raw(std::size_t count) {
    need(count);
    std::vector<std::uint8_t> out(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + count));
    pos_ += count;
    return out;
  }
  // Payload size check up front so truncation reports the full expectation.
  void expect_total(std::size_t total) const {
    if (bytes_.size() != total) {
      throw LoadError(what_ + ": expected " + std::to_string(total) + " bytes, got " +
                      std::to_string(bytes_.size()) +
                      (bytes_.size() < total ? " (truncated)" : " (trailing data)"));
    }
  }

 private:
  void need(std::size_t count) const {
    if (pos_ + count > bytes_.size()) {
      throw LoadError(what_ + ": expected at least " + std::to_string(pos_ + count) +
                      " bytes, got " + std::to_string(bytes_.size()) + " (truncated)");
    }
  }

  const std::string& bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

bool is_csv(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".csv";
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > UINT32_MAX) throw InvalidInput(std::string(what) + " does not fit in 32 bits");
  return static_cast<std::uint32_t>(v);
}

RealVector unit_gaussian(std::size_t n, Rng& rng) {
  RealVector v(n);
  double norm_sq = 0.0;
  while (norm_sq == 0.0) {
    for (auto& e : v) e = rng.normal();
    norm_sq = 0.0;
    for (double e : v) norm_sq += e * e;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& e : v) e *= inv;
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

PointSet read_points_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw LoadError(path.string() + ": empty CSV file");
  std::size_t n = 0;
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      if (cell != "x" + std::to_string(n)) {
        throw LoadError(path.string() + ": CSV header must be x0,x1,...; got column \"" + cell + "\"");
      }
      ++n;
    }
  }
  if (n == 0) throw LoadError(path.string() + ": CSV header has no columns");
  std::vector<RealVector> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    RealVector row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      double v = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      while (first < last && *first == ' ') ++first;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw LoadError(path.string() + ":" + std::to_string(line_no) + ": cannot parse \"" + cell + "\"");
      }
      if (!std::isfinite(v)) {
        throw LoadError(path.string() + ":" + std::to_string(line_no) + ": non-finite value");
      }
      row.push_back(v);
    }
    if (row.size() != n) {
      throw LoadError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(n) + " values, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw LoadError(path.string() + ": CSV file has no points");
  return PointSet::from_rows(rows);
}

}  // namespace

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "sphere") return GeneratorKind::kSphere;
  if (name == "sparse") return GeneratorKind::kSparse;
  if (name == "subspace") return GeneratorKind::kSubspace;
  if (name == "clusters") return GeneratorKind::kClusters;
  if (name == "grid") return GeneratorKind::kGrid;
  throw InvalidInput("unknown generator kind \"" + name + "\"");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kSphere: return "sphere";
    case GeneratorKind::kSparse: return "sparse";
    case GeneratorKind::kSubspace: return "subspace";
    case GeneratorKind::kClusters: return "clusters";
    case GeneratorKind::kGrid: return "grid";
  }
  return "unknown";
}

PointSet generate(const GeneratorSpec& spec) {
  if (spec.count == 0 || spec.n == 0) throw InvalidInput("generator needs count >= 1 and n >= 1");
  Rng rng(derive_seed(spec.seed, stream::kPoints));
  const auto count = static_cast<Eigen::Index>(spec.count);
  const auto n = static_cast<Eigen::Index>(spec.n);
  RowMatrix pts = RowMatrix::Zero(count, n);

  switch (spec.kind) {
    case GeneratorKind::kSphere:
      for (Eigen::Index i = 0; i < count; ++i) {
        const auto v = unit_gaussian(spec.n, rng);
        for (Eigen::Index j = 0; j < n; ++j) pts(i, j) = v[static_cast<std::size_t>(j)];
      }
      break;

    case GeneratorKind::kSparse: {
      if (spec.sparsity < 1 || spec.sparsity > spec.n) {
        throw InvalidInput("sparse generator needs 1 <= r <= n");
      }
      const SparseSampler sampler(spec.sparsity, spec.n, spec.count, rng.next_u64());
      pts = sampler.draw_all();
      break;
    }

    case GeneratorKind::kSubspace: {
      if (spec.subspace_dim < 1 || spec.subspace_dim > spec.n) {
        throw InvalidInput("subspace generator needs 1 <= d <= n");
      }
      const auto d = static_cast<Eigen::Index>(spec.subspace_dim);
      Eigen::MatrixXd gauss(n, d);
      for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) gauss(r, c) = rng.normal();
      }
      const Eigen::MatrixXd basis =
          Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ() * Eigen::MatrixXd::Identity(n, d);
      for (Eigen::Index i = 0; i < count; ++i) {
        const auto coeffs = unit_gaussian(spec.subspace_dim, rng);
        const Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), d);
        pts.row(i) = (basis * c).transpose();
      }
      break;
    }

    case GeneratorKind::kClusters: {
      if (spec.clusters < 1) throw InvalidInput("clusters generator needs at least one center");
      if (!(spec.spread >= 0.0)) throw InvalidInput("clusters generator needs spread >= 0");
      std::vector<RealVector> centers;
      for (std::size_t c = 0; c < spec.clusters; ++c) centers.push_back(unit_gaussian(spec.n, rng));
      const double noise = spec.spread / std::sqrt(static_cast<double>(spec.n));
      for (Eigen::Index i = 0; i < count; ++i) {
        const auto& center = centers[static_cast<std::size_t>(i) % spec.clusters];
        for (Eigen::Index j = 0; j < n; ++j) {
          pts(i, j) = center[static_cast<std::size_t>(j)] + noise * rng.normal();
        }
      }
      break;
    }

    case GeneratorKind::kGrid: {
      const std::size_t axes = spec.n >= 2 ? 2 : 1;
      std::size_t side = 1;
      while ((axes == 2 ? side * side : side) < spec.count) ++side;
      const double step = side > 1 ? 1.0 / static_cast<double>(side - 1) : 0.0;
      for (Eigen::Index i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        pts(i, 0) = static_cast<double>(idx % side) * step;
        if (axes == 2) pts(i, 1) = static_cast<double>(idx / side) * step;
      }
      break;
    }
  }
  return PointSet(std::move(pts));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_points(const std::filesystem::path& path, const PointSet& points) {
  if (is_csv(path)) {
    std::string out;
    for (std::size_t j = 0; j < points.dim(); ++j) {
      if (j) out += ',';
      out += "x" + std::to_string(j);
    }
    out += '\n';
    for (std::size_t i = 0; i < points.count(); ++i) {
      const auto row = points.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ',';
        out += format_double(row[j]);
      }
      out += '\n';
    }
    write_file_atomic(path, out);
    return;
  }
  ByteWriter w;
  w.magic(kPointsMagic);
  w.u32(kPointsVersion);
  w.u32(checked_u32(points.dim(), "dimension"));
  w.u32(checked_u32(points.count(), "point count"));
  const double* data = points.matrix().data();
  for (std::size_t i = 0; i < points.count() * points.dim(); ++i) w.f64(data[i]);
  write_file_atomic(path, w.bytes());
}

PointSet read_points(const std::filesystem::path& path) {
  if (is_csv(path)) return read_points_csv(path);
  const std::string bytes = read_file(path);
  ByteReader r(bytes, path.string());
  r.expect_magic(kPointsMagic);
  const std::uint32_t version = r.u32();
  if (version != kPointsVersion) {
    throw LoadError(path.string() + ": unsupported point file version " + std::to_string(version));
  }
  const std::uint32_t n = r.u32();
  const std::uint32_t count = r.u32();
  if (n == 0 || count == 0) throw LoadError(path.string() + ": empty point set");
  r.expect_total(16 + std::size_t{8} * n * count);
  RowMatrix pts(count, n);
  double* data = pts.data();
  for (std::size_t i = 0; i < std::size_t{n} * count; ++i) {
    data[i] = r.f64();
    if (!std::isfinite(data[i])) {
      throw LoadError(path.string() + ": non-finite value at point " + std::to_string(i / n) +
                      ", coordinate " + std::to_string(i % n));
    }
  }
  return PointSet(std::move(pts));
}

void write_codes(const std::filesystem::path& path, const std::vector<BinaryCode>& codes,
                 std::size_t m) {
  ByteWriter w;
  w.magic(kCodesMagic);
  w.u32(kCodesVersion);
  w.u32(checked_u32(m, "code length"));
  w.u32(checked_u32(codes.size(), "code count"));
  for (const auto& c : codes) {
    if (c.size() != m) throw InvalidInput("code length does not match the declared m");
    w.raw(c.to_bytes());
  }
  write_file_atomic(path, w.bytes());
}

std::vector<BinaryCode> read_codes(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  ByteReader r(bytes, path.string());
  r.expect_magic(kCodesMagic);
  const std::uint32_t version = r.u32();
  if (version != kCodesVersion) {
    throw LoadError(path.string() + ": unsupported code file version " + std::to_string(version));
  }
  const std::uint32_t m = r.u32();
  const std::uint32_t count = r.u32();
  const std::size_t per_code = (std::size_t{m} + 7) / 8;
  r.expect_total(16 + per_code * count);
  std::vector<BinaryCode> codes;
  codes.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto raw = r.raw(per_code);
    codes.push_back(BinaryCode::from_bytes(m, raw));
  }
  return codes;
}

void write_operator(const std::filesystem::path& path, const DoubleCirculantOperator& op) {
  if (op.mode() == IndexMode::kFixed && !op.index_set().is_default_fixed()) {
    throw InvalidInput("operators with a custom fixed index list cannot be serialized");
  }
  ByteWriter w;
  w.magic(kOperatorMagic);
  w.u32(kOperatorVersion);
  w.u32(checked_u32(op.input_dim(), "n"));
  w.u32(checked_u32(op.nominal_rows(), "m"));
  w.u8(static_cast<std::uint8_t>(op.mode()));
  w.u64(op.seed());
  write_file_atomic(path, w.bytes());
}

DoubleCirculantOperator read_operator(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  ByteReader r(bytes, path.string());
  r.expect_magic(kOperatorMagic);
  const std::uint32_t version = r.u32();
  if (version != kOperatorVersion) {
    throw LoadError(path.string() + ": unsupported operator file version " + std::to_string(version));
  }
  r.expect_total(4 + 4 + 4 + 4 + 1 + 8);
  const std::uint32_t n = r.u32();
  const std::uint32_t m = r.u32();
  const std::uint8_t mode = r.u8();
  const std::uint64_t seed = r.u64();
  if (mode > static_cast<std::uint8_t>(IndexMode::kSelectors)) {
    throw LoadError(path.string() + ": unknown index mode " + std::to_string(mode));
  }
  try {
    return DoubleCirculantOperator::build(n, m, static_cast<IndexMode>(mode), seed);
  } catch (const InvalidInput& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

std::string plan_to_json(const EmbeddingPlan& plan, int indent) {
  nlohmann::json j;
  j["delta"] = plan.delta;
  j["R"] = plan.radius;
  j["theta"] = plan.theta;
  j["lambda"] = plan.lambda;
  j["k"] = plan.k;
  j["m"] = plan.m;
  j["kappa"] = plan.kappa;
  j["constants"] = {{"c0", plan.constants.c0},
                    {"c1", plan.constants.c1},
                    {"c2", plan.constants.c2},
                    {"c3", plan.constants.c3}};
  j["log_net_size"] = plan.log_net_size;
  j["local_width_sq"] = plan.local_width_sq;
  if (plan.n != 0) j["n"] = plan.n;
  return j.dump(indent);
}

EmbeddingPlan plan_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    EmbeddingPlan plan;
    plan.delta = j.at("delta").get<double>();
    plan.radius = j.at("R").get<double>();
    plan.theta = j.at("theta").get<double>();
    plan.lambda = j.at("lambda").get<double>();
    plan.k = j.at("k").get<std::size_t>();
    plan.m = j.at("m").get<std::size_t>();
    plan.kappa = j.at("kappa").get<double>();
    const auto& c = j.at("constants");
    plan.constants.c0 = c.at("c0").get<double>();
    plan.constants.c1 = c.at("c1").get<double>();
    plan.constants.c2 = c.at("c2").get<double>();
    plan.constants.c3 = c.at("c3").get<double>();
    plan.constants.kappa = plan.kappa;
    plan.log_net_size = j.at("log_net_size").get<double>();
    plan.local_width_sq = j.at("local_width_sq").get<double>();
    plan.n = j.value("n", std::size_t{0});
    if (plan.m == 0 || !(plan.lambda > 0.0) || !(plan.kappa > 0.0)) {
      throw LoadError("plan has non-positive m, lambda or kappa");
    }
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed plan: ") + e.what());
  }
}

void write_plan(const std::filesystem::path& path, const EmbeddingPlan& plan) {
  write_file_atomic(path, plan_to_json(plan) + "\n");
}

EmbeddingPlan read_plan(const std::filesystem::path& path) {
  try {
    return plan_from_json(read_file(path));
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

void write_report(const std::filesystem::path& path, const VerificationReport& report) {
  write_file_atomic(path, report_to_json(report));
}

VerificationReport read_report(const std::filesystem::path& path) {
  return report_from_json(read_file(path));
}

}  // namespace hcube
