#include "clab/json_io.hpp"

#include <cstring>

namespace clab {

namespace {

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

Eigen::VectorXd parse_vector(const json& j) {
  if (!j.is_array()) throw InputError("expected a JSON array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::vector<std::vector<Eigen::VectorXd>> parse_vector_families(const json& j) {
  std::vector<std::vector<Eigen::VectorXd>> out;
  for (const auto& block : j) {
    std::vector<Eigen::VectorXd> vs;
    for (const auto& item : block) vs.push_back(parse_vector(item));
    out.push_back(std::move(vs));
  }
  return out;
}

json families_to_json(const std::vector<std::vector<Eigen::VectorXd>>& fams) {
  json out = json::array();
  for (const auto& block : fams) {
    json jb = json::array();
    for (const auto& v : block) jb.push_back(vector_to_json(v));
    out.push_back(std::move(jb));
  }
  return out;
}

}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    std::uint32_t chunk = bytes[i] << 16;
    const bool has2 = i + 1 < bytes.size(), has3 = i + 2 < bytes.size();
    if (has2) chunk |= bytes[i + 1] << 8;
    if (has3) chunk |= bytes[i + 2];
    out.push_back(kB64Alphabet[(chunk >> 18) & 63]);
    out.push_back(kB64Alphabet[(chunk >> 12) & 63]);
    out.push_back(has2 ? kB64Alphabet[(chunk >> 6) & 63] : '=');
    out.push_back(has3 ? kB64Alphabet[chunk & 63] : '=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  const auto value_of = [](char ch) -> int {
    if (ch >= 'A' && ch <= 'Z') return ch - 'A';
    if (ch >= 'a' && ch <= 'z') return ch - 'a' + 26;
    if (ch >= '0' && ch <= '9') return ch - '0' + 52;
    if (ch == '+') return 62;
    if (ch == '/') return 63;
    if (ch == '=') return -1;
    throw InputError("base64: invalid character");
  };
  if (text.size() % 4 != 0) throw InputError("base64: length must be a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pads = 0;
    for (int k = 0; k < 4; ++k) {
      vals[k] = value_of(text[i + k]);
      if (vals[k] < 0) {
        ++pads;
        vals[k] = 0;
      }
    }
    const std::uint32_t chunk = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
    out.push_back((chunk >> 16) & 0xff);
    if (pads < 2) out.push_back((chunk >> 8) & 0xff);
    if (pads < 1) out.push_back(chunk & 0xff);
  }
  return out;
}

OperatorSymbol parse_operator(const json& spec) {
  if (!spec.is_object()) throw InputError("operator spec must be a JSON object");
  if (spec.contains("preset"))
    return operator_preset(spec["preset"].get<std::string>(), spec.value("n", 2));
  for (const char* key : {"n", "dimV", "dimE", "coeffs"})
    if (!spec.contains(key)) throw InputError(std::string("operator spec is missing ") + key);
  const int n = spec["n"].get<int>();
  const int dim_v = spec["dimV"].get<int>();
  const int dim_e = spec["dimE"].get<int>();
  const auto& coeffs = spec["coeffs"];
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n)
    throw InputError("operator coeffs must hold one [e][v] matrix per variable");
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& jm : coeffs) {
    if (static_cast<int>(jm.size()) != dim_e) throw InputError("operator coeffs: bad E extent");
    Eigen::MatrixXd m(dim_e, dim_v);
    for (int e = 0; e < dim_e; ++e) {
      if (static_cast<int>(jm[e].size()) != dim_v)
        throw InputError("operator coeffs: bad V extent");
      for (int v = 0; v < dim_v; ++v) m(e, v) = jm[e][v].get<double>();
    }
    mats.push_back(std::move(m));
  }
  return OperatorSymbol(n, dim_v, dim_e, std::move(mats));
}

json operator_to_json(const OperatorSymbol& a) {
  json coeffs = json::array();
  for (const auto& m : a.coeff) {
    json jm = json::array();
    for (int e = 0; e < a.dimE; ++e) {
      json row = json::array();
      for (int v = 0; v < a.dimV; ++v) row.push_back(m(e, v));
      jm.push_back(std::move(row));
    }
    coeffs.push_back(std::move(jm));
  }
  return json{{"n", a.n}, {"dimV", a.dimV}, {"dimE", a.dimE}, {"coeffs", std::move(coeffs)}};
}

SampledField parse_field(const json& spec) {
  for (const char* key : {"n", "shape", "h"})
    if (!spec.contains(key)) throw InputError(std::string("field spec is missing ") + key);
  const int n = spec["n"].get<int>();
  const std::vector<int> shape = spec["shape"].get<std::vector<int>>();
  const double h = spec["h"].get<double>();
  const std::string kind = spec.value("kind", "scalar");
  if (kind != "scalar" && kind != "vector")
    throw InputError("field kind must be \"scalar\" or \"vector\"");
  const int dim_v = kind == "scalar" ? 1 : spec.value("dimV", n);

  if (spec.contains("generator")) {
    const auto& gen = spec["generator"];
    if (!gen.is_object() || !gen.contains("name"))
      throw InputError("field generator must be an object with a name");
    GeneratorParams params;
    for (const auto& [key, value] : gen.items())
      if (key != "name") params[key] = value.get<double>();
    return generate_field(gen["name"].get<std::string>(), n, shape, h, dim_v, params);
  }
  if (spec.contains("raw")) {
    SampledField field(n, shape, h, dim_v);
    const auto bytes = base64_decode(spec["raw"].get<std::string>());
    if (bytes.size() != field.values.size() * sizeof(double))
      throw InputError("field raw payload has the wrong size");
    std::memcpy(field.values.data(), bytes.data(), bytes.size());
    field.refresh_support_flag();
    return field;
  }
  throw InputError("field spec needs either a generator or a raw payload");
}

json field_to_json(const SampledField& field, bool embed_values) {
  json out{{"n", field.n},
           {"shape", field.shape},
           {"h", field.h},
           {"kind", field.is_scalar() ? "scalar" : "vector"},
           {"dimV", field.dimV}};
  if (embed_values) {
    std::vector<std::uint8_t> bytes(field.values.size() * sizeof(double));
    std::memcpy(bytes.data(), field.values.data(), bytes.size());
    out["raw"] = base64_encode(bytes);
  }
  return out;
}

VoxelSet parse_voxels(const json& spec) {
  for (const char* key : {"n", "h"})
    if (!spec.contains(key)) throw InputError(std::string("voxel spec is missing ") + key);
  const int n = spec["n"].get<int>();
  const double h = spec["h"].get<double>();
  if (spec.contains("cells")) {
    VoxelSet set(n, h);
    for (const auto& jc : spec["cells"]) {
      if (static_cast<int>(jc.size()) != n) throw InputError("voxel cell index dimension");
      Eigen::VectorXi cell(n);
      for (int k = 0; k < n; ++k) cell[k] = jc[k].get<int>();
      set.add(cell);
    }
    return set;
  }
  if (spec.contains("generator")) {
    const auto& gen = spec["generator"];
    const std::string name = gen.value("name", "");
    if (name == "ball") {
      Eigen::VectorXd center;
      if (gen.contains("center")) center = parse_vector(gen["center"]);
      return VoxelSet::ball(n, h, gen.value("radius", 1.0), center);
    }
    if (name == "parallelepiped") {
      if (!gen.contains("spanning")) throw InputError("parallelepiped needs spanning vectors");
      Eigen::MatrixXd span(n, n);
      const auto& js = gen["spanning"];
      if (static_cast<int>(js.size()) != n)
        throw InputError("parallelepiped needs n spanning vectors");
      for (int c = 0; c < n; ++c) span.col(c) = parse_vector(js[c]);
      Eigen::VectorXd origin;
      if (gen.contains("origin")) origin = parse_vector(gen["origin"]);
      return VoxelSet::parallelepiped(n, h, span, origin);
    }
    if (name == "cube") return VoxelSet::cube(n, h, gen.value("side_cells", 1));
    throw InputError("unknown voxel generator: " + name);
  }
  throw InputError("voxel spec needs either cells or a generator");
}

json certificate_to_json(const OperatorSymbol& a, const CancelingCertificate& cert,
                         const CertificateReport& report) {
  json jr{{"identity_residual", report.identity_residual},
          {"independence_margins", report.independence_margins},
          {"gamma_bound", report.gamma_bound},
          {"arrangement_reaches_zero", report.arrangement_reaches_zero},
          {"identity_tol", report.identity_tol},
          {"independence_tol", report.independence_tol},
          {"pass", report.pass()}};
  return json{{"operator", operator_to_json(a)},
              {"m", cert.m},
              {"w", families_to_json(cert.w)},
              {"v", families_to_json(cert.v)},
              {"e", families_to_json(cert.e)},
              {"xi", families_to_json(cert.xi)},
              {"seed", cert.seed},
              {"budget", cert.budget},
              {"report", std::move(jr)}};
}

CancelingCertificate parse_certificate(const json& spec) {
  CancelingCertificate cert;
  for (const char* key : {"m", "w", "v", "e", "xi"})
    if (!spec.contains(key)) throw InputError(std::string("certificate is missing ") + key);
  cert.m = spec["m"].get<int>();
  cert.w = parse_vector_families(spec["w"]);
  cert.v = parse_vector_families(spec["v"]);
  cert.e = parse_vector_families(spec["e"]);
  cert.xi = parse_vector_families(spec["xi"]);
  cert.seed = spec.value("seed", 0);
  cert.budget = spec.value("budget", 0);
  return cert;
}

DirectionalFamily parse_family(const json& spec) {
  if (spec.contains("de_figueiredo")) {
    const auto& df = spec["de_figueiredo"];
    std::vector<Eigen::VectorXd> w, v;
    for (const auto& jw : df["w"]) w.push_back(parse_vector(jw));
    for (const auto& jv : df["v"]) v.push_back(parse_vector(jv));
    return de_figueiredo_expand(w, v);
  }
  if (!spec.contains("w") || !spec.contains("v"))
    throw InputError("family spec needs w and v block arrays");
  return DirectionalFamily(parse_vector_families(spec["w"]), parse_vector_families(spec["v"]));
}

json verification_to_json(const VerificationReport& report) {
  json out{{"case", report.case_id}, {"lhs", report.lhs}, {"rhs", report.rhs}};
  if (report.degenerate)
    out["ratio"] = "degenerate";
  else if (report.anomaly)
    out["ratio"] = "anomaly";
  else
    out["ratio"] = report.ratio;
  out["constant_estimate"] = report.degenerate || report.anomaly ? json() : json(report.ratio);
  out["h"] = report.h;
  out["shape"] = report.shape;
  out["seed"] = report.seed;
  if (report.gamma_bound > 0.0) out["gamma_bound"] = report.gamma_bound;
  if (!report.params.empty()) out["params"] = report.params;
  return out;
}

}  // namespace clab
