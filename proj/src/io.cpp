#include "renyi/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace renyi::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

int positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0)
    fail(std::string("'") + key + "' must be a positive integer");
  return j[key].get<int>();
}

double number_after(const std::string& spec, std::size_t pos) {
  const std::string rest = spec.substr(pos);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(rest, &used);
  } catch (const std::exception&) {
    fail("bad number in channel spec '" + spec + "'");
  }
  if (used != rest.size() || !std::isfinite(v)) fail("bad number in channel spec '" + spec + "'");
  return v;
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) fail("matrix must be an object with 'dim' and 'entries'");
  const int n = positive_int(j, "dim");
  if (!j.contains("entries") || !j["entries"].is_array()) fail("'entries' must be an array");
  const auto& e = j["entries"];
  if (e.size() != static_cast<std::size_t>(n) * n) {
    std::ostringstream os;
    os << "'entries' has " << e.size() << " pairs, expected " << n * n;
    fail(os.str());
  }
  CMatrix m(n, n);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto& p = e[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail("entry " + std::to_string(k) + " must be a [re, im] pair");
    const double re = p[0].get<double>(), im = p[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) fail("entry " + std::to_string(k) + " is not finite");
    m(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) = Complex(re, im);
  }
  return m;
}

json matrix_to_json(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix_to_json needs a square matrix");
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"dim", m.rows()}, {"entries", entries}};
}

HermitianOperator state_from_json(const json& j) {
  HermitianOperator h(matrix_from_json(j));
  const double lo = min_eigenvalue(h);
  if (lo < -1e-9 * std::max(1.0, op_norm(h)))
    throw Error(ErrorKind::NotPSD, "state has a negative eigenvalue " + std::to_string(lo));
  return h;
}

QChannel channel_from_json(const json& j) {
  if (!j.is_object()) fail("channel must be an object");
  const int din = positive_int(j, "dim_in");
  const int dout = positive_int(j, "dim_out");
  const bool has_kraus = j.contains("kraus"), has_choi = j.contains("choi");
  if (has_kraus == has_choi) fail("channel needs exactly one of 'kraus' or 'choi'");
  if (has_choi) return QChannel::from_choi(HermitianOperator(matrix_from_json(j["choi"])), din, dout);
  if (!j["kraus"].is_array() || j["kraus"].empty()) fail("'kraus' must be a non-empty array");
  std::vector<CMatrix> ks;
  for (const auto& kj : j["kraus"]) {
    // Kraus operators may be rectangular: {"rows", "cols", "entries"} or square matrix schema.
    if (kj.contains("rows")) {
      const int r = positive_int(kj, "rows"), c = positive_int(kj, "cols");
      if (!kj.contains("entries") || !kj["entries"].is_array() ||
          kj["entries"].size() != static_cast<std::size_t>(r) * c)
        fail("Kraus 'entries' length does not match rows*cols");
      CMatrix k(r, c);
      for (int i = 0; i < r * c; ++i) {
        const auto& p = kj["entries"][i];
        if (!p.is_array() || p.size() != 2) fail("Kraus entry must be a [re, im] pair");
        k(i / c, i % c) = Complex(p[0].get<double>(), p[1].get<double>());
      }
      ks.push_back(k);
    } else {
      ks.push_back(matrix_from_json(kj));
    }
  }
  return QChannel::from_kraus(ks, din, dout);
}

json channel_to_json(const QChannel& ch) {
  return {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"choi", matrix_to_json(ch.choi().matrix())}};
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << origin << ":" << line << ":" << col << ": invalid JSON";
    fail(os.str());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

HermitianOperator load_state(const std::string& path) {
  try {
    return state_from_json(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse && std::string(e.what()).find(path) == std::string::npos)
      fail(path + ": " + std::string(e.what()).substr(std::string("Parse: ").size()));
    throw;
  }
}

QChannel load_channel(const std::string& spec) {
  if (spec.rfind("ad:", 0) == 0) {
    const double g = number_after(spec, 3);
    if (g < 0.0 || g > 1.0) throw Error(ErrorKind::OutOfRange, "amplitude damping needs gamma in [0,1]");
    return amplitude_damping(g);
  }
  if (spec.rfind("depol:", 0) == 0) {
    return depolarizing(number_after(spec, 6), 2);
  }
  if (spec.rfind("identity:", 0) == 0) {
    const double d = number_after(spec, 9);
    if (d < 1 || d != std::floor(d)) throw Error(ErrorKind::OutOfRange, "identity needs a positive integer dimension");
    return identity_channel(static_cast<int>(d));
  }
  try {
    return channel_from_json(read_file(spec));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse && std::string(e.what()).find(spec) == std::string::npos)
      fail(spec + ": " + std::string(e.what()).substr(std::string("Parse: ").size()));
    throw;
  }
}

}  // namespace renyi::io
