#include "itroots/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace itroots {

namespace {

using Json = nlohmann::ordered_json;

Json point_to_json(const Point& p) {
  Json arr = Json::array();
  for (const auto& c : p.coords) arr.push_back(rat_to_string(c));
  return arr;
}

Point point_from(const Json& j) {
  std::vector<Rat> coords;
  for (const auto& c : j) coords.push_back(rat_from_string(c.get<std::string>()));
  return Point(std::move(coords));
}

Json complex_to_json(const SimplicialComplex& k) {
  Json j;
  j["dim"] = k.dim;
  Json verts = Json::array();
  for (const auto& v : k.vertices) verts.push_back(point_to_json(v));
  j["vertices"] = std::move(verts);
  Json simp = Json::array();
  for (int id : k.maximal_ids) simp.push_back(k.simplices[id]);
  j["simplices"] = std::move(simp);
  return j;
}

SimplicialComplex complex_from(const Json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<Point> verts;
  for (const auto& v : j.at("vertices")) verts.push_back(point_from(v));
  std::vector<std::vector<int>> maximal;
  for (const auto& s : j.at("simplices")) maximal.push_back(s.get<std::vector<int>>());
  return SimplicialComplex::from_maximal(dim, std::move(verts), std::move(maximal));
}

Json pl_map_to_json(const PLMap& f) {
  Json j;
  j["complex"] = complex_to_json(f.complex);
  Json imgs = Json::array();
  for (const auto& y : f.images) imgs.push_back(point_to_json(y));
  j["images"] = std::move(imgs);
  return j;
}

PLMap pl_map_from(const Json& j) {
  SimplicialComplex k = complex_from(j.at("complex"));
  std::vector<Point> images;
  for (const auto& y : j.at("images")) images.push_back(point_from(y));
  return interpolate(std::move(k), std::move(images), SelfMapCheck::None);
}

}  // namespace

std::string to_json_string(const FunctionalGraph& g) {
  Json j;
  j["n"] = g.n;
  j["image"] = g.image;
  return j.dump();
}

FunctionalGraph functional_graph_from_json(const std::string& text) {
  Json j = Json::parse(text);
  return FunctionalGraph(j.at("n").get<int>(), j.at("image").get<std::vector<int>>());
}

std::string to_json_string(const T3FiniteCertificate& c) {
  Json j;
  j["x0"] = c.x0;
  j["y0"] = c.y0;
  j["preimage2"] = c.preimage2;
  j["case_tag"] = c.case_tag;
  return j.dump();
}

T3FiniteCertificate t3_certificate_from_json(const std::string& text) {
  Json j = Json::parse(text);
  T3FiniteCertificate c;
  c.x0 = j.at("x0").get<int>();
  c.y0 = j.at("y0").get<int>();
  c.preimage2 = j.at("preimage2").get<std::vector<int>>();
  c.case_tag = j.at("case_tag").get<std::string>();
  return c;
}

std::string to_json_string(const Permutation& p) { return Json(p.image).dump(); }

Permutation permutation_from_json(const std::string& text) {
  return Permutation(Json::parse(text).get<std::vector<int>>());
}

std::string to_json_string(const CycleType& t) {
  Json j = Json::object();
  for (const auto& [m, c] : t.counts) j[std::to_string(m)] = c;
  return j.dump();
}

CycleType cycle_type_from_json(const std::string& text) {
  Json j = Json::parse(text);
  CycleType t;
  for (auto it = j.begin(); it != j.end(); ++it) {
    t.counts[std::stol(it.key())] = it.value().get<long>();
  }
  return t;
}

std::string to_json_string(const OrbitInventory& inv) {
  Json j;
  Json cycles = Json::object();
  for (const auto& [d, mult] : inv.cycles) {
    cycles[std::to_string(d)] = mult.infinite ? Json("inf") : Json(mult.count);
  }
  j["cycles"] = std::move(cycles);
  j["m_plus"] = inv.m_plus.infinite ? Json("inf") : Json(inv.m_plus.count);
  j["m_bi"] = inv.m_bi.infinite ? Json("inf") : Json(inv.m_bi.count);
  return j.dump();
}

std::string to_json_string(const Point& p) { return point_to_json(p).dump(); }

Point point_from_json(const std::string& text) { return point_from(Json::parse(text)); }

std::string to_json_string(const SimplicialComplex& k) { return complex_to_json(k).dump(); }

SimplicialComplex complex_from_json(const std::string& text) {
  return complex_from(Json::parse(text));
}

std::string to_json_string(const PLMap& f) { return pl_map_to_json(f).dump(); }

PLMap pl_map_from_json(const std::string& text) { return pl_map_from(Json::parse(text)); }

std::string to_json_string(const NoRootCertificate& c) {
  Json j;
  j["type"] = "no_root_certificate";
  j["case"] = c.case_tag;
  j["sigma0"] = c.sigma0;
  j["v0"] = point_to_json(c.v0);
  j["f_v0"] = point_to_json(c.f_v0);
  j["sigma_star"] = c.sigma_star;
  j["witness_point"] = point_to_json(c.witness_point);
  j["ledger_failures"] = c.ledger_failures;
  j["notes"] = c.notes;
  return j.dump();
}

NoRootCertificate no_root_certificate_from_json(const std::string& text) {
  Json j = Json::parse(text);
  NoRootCertificate c;
  c.case_tag = j.at("case").get<std::string>();
  c.sigma0 = j.at("sigma0").get<std::vector<int>>();
  c.v0 = point_from(j.at("v0"));
  c.f_v0 = point_from(j.at("f_v0"));
  c.sigma_star = j.at("sigma_star").get<std::vector<int>>();
  c.witness_point = point_from(j.at("witness_point"));
  c.ledger_failures = j.at("ledger_failures").get<std::vector<int>>();
  c.notes = j.at("notes").get<std::vector<std::string>>();
  return c;
}

std::string to_json_string(const SquareApproxResult& r) {
  Json j;
  j["type"] = "square_approx_result";
  j["f1"] = pl_map_to_json(r.f1);
  j["phi"] = pl_map_to_json(r.phi);
  j["sigma0"] = r.sigma0;
  j["certified_bound"] = rat_to_string(r.certified_bound);
  j["grid_step"] = rat_to_string(r.grid_step);
  j["l_gg"] = rat_to_string(r.l_gg);
  j["log"] = r.log;
  return j.dump();
}

std::string render_certificate(const NoRootCertificate& c, const CertificateCheckReport& rep) {
  std::ostringstream os;
  os << "no-root certificate (" << c.case_tag << ")\n";
  os << "  constant simplex vertices: [";
  for (std::size_t i = 0; i < c.sigma0.size(); ++i) os << (i ? " " : "") << c.sigma0[i];
  os << "]\n";
  os << "  constant value v0 = " << to_json_string(c.v0) << "\n";
  os << "  f(v0)            = " << to_json_string(c.f_v0) << "\n";
  os << "  witness piece: [";
  for (std::size_t i = 0; i < c.sigma_star.size(); ++i) os << (i ? " " : "") << c.sigma_star[i];
  os << "]  witness point " << to_json_string(c.witness_point) << "\n";
  os << "  checks: constancy=" << rep.constancy << " displacement=" << rep.displacement
     << " witness_simplex=" << rep.witness_simplex << " witness_injective="
     << rep.witness_injective << " witness_overlap=" << rep.witness_overlap
     << " ledger=" << rep.ledger << "\n";
  if (!rep.ledger_failures.empty()) {
    os << "  non-injective pieces (other than sigma0): " << rep.ledger_failures.size() << "\n";
  }
  os << "  verdict: " << (rep.all() ? "VALID" : "INVALID") << "\n";
  for (const auto& n : c.notes) os << "  note: " << n << "\n";
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace itroots
