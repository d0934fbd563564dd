#include "kcm/io.hpp"

#include <fstream>
#include <sstream>

#include "kcm/error.hpp"

namespace kcm {

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw KcmError(ErrorCode::InvalidInput, what); }

std::vector<Coord> coords_from_json(const Json& j) {
  if (!j.is_array()) bad_input("expected a coordinate array");
  std::vector<Coord> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad_input("coordinates must be integers");
    c.push_back(x.get<Coord>());
  }
  return c;
}

std::vector<Site> sites_from_json(const Json& j) {
  if (!j.is_array()) bad_input("expected a list of sites");
  std::vector<Site> out;
  for (const auto& s : j) out.push_back(site_from_json(s));
  return out;
}

Json sites_to_json(const std::vector<Site>& sites) {
  Json arr = Json::array();
  for (const Site& s : sites) arr.push_back(site_to_json(s));
  return arr;
}

}  // namespace

Json site_to_json(const Site& s) { return Json(s.coords); }

Site site_from_json(const Json& j) {
  // Bare integers are accepted as one-dimensional sites.
  if (j.is_number_integer()) return Site{j.get<Coord>()};
  return Site(coords_from_json(j));
}

UpdateFamily family_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("rules"))
    bad_input("family document needs fields \"d\" and \"rules\"");
  if (!doc["d"].is_number_integer() || doc["d"].get<long long>() < 1) bad_input("\"d\" must be a positive integer");
  const auto d = doc["d"].get<std::size_t>();
  const Json& rules = doc["rules"];
  if (!rules.is_array()) bad_input("\"rules\" must be an array");
  std::vector<std::vector<Site>> raw;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    if (!rules[k].is_array())
      throw KcmError(ErrorCode::InvalidInput, "rule " + std::to_string(k) + " is not an array", k);
    std::vector<Site> rule;
    for (const auto& s : rules[k]) {
      try {
        rule.push_back(site_from_json(s));
      } catch (const KcmError& e) {
        throw KcmError(ErrorCode::InvalidInput, "rule " + std::to_string(k) + ": " + e.what(), k);
      }
    }
    raw.push_back(std::move(rule));
  }
  return UpdateFamily(d, std::move(raw));
}

Json family_to_json(const UpdateFamily& family) {
  Json doc;
  doc["d"] = family.dim();
  Json rules = Json::array();
  for (const UpdateRule& r : family.rules()) rules.push_back(sites_to_json(r.sites()));
  doc["rules"] = std::move(rules);
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad_input(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) bad_input("cannot write " + path);
  out << doc.dump(2) << '\n';
}

UpdateFamily load_family_file(const std::string& path) { return family_from_json(read_json_file(path)); }

Json domain_to_json(const Domain& domain) {
  Json doc;
  if (domain.is_box()) {
    doc["lo"] = domain.lo();
    doc["hi"] = domain.hi();
  } else {
    doc["sites"] = sites_to_json(domain.sites());
  }
  return doc;
}

DomainPtr domain_from_json(const Json& doc) {
  if (!doc.is_object()) bad_input("domain must be an object");
  if (doc.contains("lo") && doc.contains("hi"))
    return make_box({coords_from_json(doc["lo"]), coords_from_json(doc["hi"])});
  if (doc.contains("sites")) return std::make_shared<const Domain>(sites_from_json(doc["sites"]));
  bad_input("domain needs \"lo\"/\"hi\" or \"sites\"");
}

BoundaryMode boundary_from_string(const std::string& s) {
  if (s == "zero") return BoundaryMode::OutsideAllZero;
  if (s == "one") return BoundaryMode::OutsideAllOne;
  bad_input("boundary must be \"zero\" or \"one\", got \"" + s + "\"");
}

Json certificate_to_json(const PathCertificate& cert) {
  Json doc;
  doc["domain"] = cert.domain ? domain_to_json(*cert.domain) : Json();
  doc["boundary"] = std::string(to_string(cert.boundary));
  doc["n"] = cert.n;
  if (!cert.start.empty()) doc["start"] = sites_to_json(cert.start);
  doc["flips"] = sites_to_json(cert.flips);
  return doc;
}

PathCertificate certificate_from_json(const Json& doc) {
  if (!doc.is_object()) bad_input("certificate must be an object");
  for (const char* key : {"domain", "boundary", "n", "flips"})
    if (!doc.contains(key)) bad_input(std::string("certificate lacks \"") + key + "\"");
  if (!doc["boundary"].is_string()) bad_input("\"boundary\" must be a string");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) bad_input("\"n\" must be a nonnegative integer");
  PathCertificate cert;
  cert.domain = domain_from_json(doc["domain"]);
  cert.boundary = boundary_from_string(doc["boundary"].get<std::string>());
  cert.n = doc["n"].get<std::size_t>();
  if (doc.contains("start")) cert.start = sites_from_json(doc["start"]);
  cert.flips = sites_from_json(doc["flips"]);
  return cert;
}

Json report_to_json(const SearchReport& report) {
  Json doc;
  doc["reached_target"] = report.reached_target;
  doc["states_visited"] = report.states_visited;
  doc["max_frontier"] = report.max_frontier;
  doc["depth"] = report.depth;
  doc["v_n_size"] = report.v_n_size ? Json(*report.v_n_size) : Json();
  doc["truncated"] = report.truncated;
  if (report.certificate) doc["certificate"] = certificate_to_json(*report.certificate);
  return doc;
}

}  // namespace kcm
