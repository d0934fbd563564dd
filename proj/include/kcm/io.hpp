#pragma once

#include "json.hpp"

#include <string>

#include "kcm/dynamics.hpp"
#include "kcm/family.hpp"
#include "kcm/search.hpp"

namespace kcm {

using Json = nlohmann::ordered_json;

// {"d": <int>, "rules": [[[c1,...,cd], ...], ...]}. Malformed documents
// raise InvalidInput; validation errors keep their rule index.
UpdateFamily family_from_json(const Json& doc);
Json family_to_json(const UpdateFamily& family);

UpdateFamily load_family_file(const std::string& path);

// Box domains serialize as {"lo": [...], "hi": [...]}, others as
// {"sites": [[...], ...]}.
Json domain_to_json(const Domain& domain);
DomainPtr domain_from_json(const Json& doc);

// {"domain": ..., "boundary": "zero"|"one", "n": int, "start": [...],
//  "flips": [[coords], ...]}; "start" is optional on input.
Json certificate_to_json(const PathCertificate& cert);
PathCertificate certificate_from_json(const Json& doc);

Json report_to_json(const SearchReport& report);

Json site_to_json(const Site& s);
Site site_from_json(const Json& j);

BoundaryMode boundary_from_string(const std::string& s);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace kcm
