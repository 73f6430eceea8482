#pragma once

#include <string>

#include "itroots/certificates.hpp"
#include "itroots/constructions.hpp"
#include "itroots/functional_graph.hpp"
#include "itroots/orbit_inventory.hpp"
#include "itroots/permutation.hpp"

namespace itroots {

// All artifacts interchange as JSON with rationals as canonical "p/q"
// strings, so runs are reproducible bit for bit. Serializers emit keys in a
// fixed order; complexes store their maximal simplices (faces are recomputed
// on load, which reproduces the identical complex).

std::string to_json_string(const FunctionalGraph& g);
FunctionalGraph functional_graph_from_json(const std::string& text);

std::string to_json_string(const T3FiniteCertificate& c);
T3FiniteCertificate t3_certificate_from_json(const std::string& text);

std::string to_json_string(const Permutation& p);
Permutation permutation_from_json(const std::string& text);

std::string to_json_string(const CycleType& t);
CycleType cycle_type_from_json(const std::string& text);

std::string to_json_string(const OrbitInventory& inv);

std::string to_json_string(const Point& p);
Point point_from_json(const std::string& text);

std::string to_json_string(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const std::string& text);

std::string to_json_string(const PLMap& f);
PLMap pl_map_from_json(const std::string& text);

std::string to_json_string(const NoRootCertificate& c);
NoRootCertificate no_root_certificate_from_json(const std::string& text);

std::string to_json_string(const SquareApproxResult& r);

/// Human-readable certificate summary.
std::string render_certificate(const NoRootCertificate& c, const CertificateCheckReport& rep);

/// Writes atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace itroots
