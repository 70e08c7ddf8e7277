#pragma once

#include <string>
#include <utility>

#include "rootclust/validation.hpp"

namespace rootclust {

// Run configuration assembled by the CLI; numeric fields stay as strings
// until parsed so errors can name the offending flag.
struct RunConfig {
    std::string poly_path;
    std::string poly_inline;
    std::string box_spec;  // "cx,cy,w"
    std::string eps_spec;  // dyadic "m*2^e", "2^-k", or decimal
    std::string out_path;
    std::string stats_path;
    std::string svg_path;
    bool no_newton = false;
    long precision_ceiling = 1L << 20;
    unsigned long seed = 0;
    bool verify = false;
};

struct ParsedPolynomial {
    OraclePolynomial poly;
    bool has_roots = false;  // true when the input used the roots form
    std::vector<RootSpec> roots;
    mpq_class lcf = 1;
};

// Polynomial input JSON: {"coeffs": [spec, ...]} low-to-high degree, or
// {"roots": [{"re": spec, "im": spec, "mult": k}, ...], "lcf": spec}.
// Mixed forms are rejected. Throws SchemaError with a JSON-pointer location.
ParsedPolynomial parse_poly(const std::string& json_text);

// "cx,cy,w" with dyadic/decimal components.
std::pair<ComplexDyadic, Dyadic> parse_box_spec(const std::string& spec);
Dyadic parse_eps_spec(const std::string& spec);

// Wire formats. All numeric values are dyadic strings "m*2^e".
std::string clusters_to_json(const SolveResult& result);
std::string clusters_to_json(const SolveResult& result, const VerificationReport* report);
std::string stats_to_json(const RunStats& stats);
std::string report_to_json(const VerificationReport& report);
std::string instance_to_json(const InstanceSpec& spec);
std::string depth_table_to_csv(const std::vector<DepthBenchRow>& rows);
std::string depth_table_to_json(const std::vector<DepthBenchRow>& rows);

// Deterministic SVG: B0 and (5/4)B0 outlines, retained boxes shaded by
// depth, output discs labeled with multiplicities.
std::string emit_svg(const RunRecord& record);

}  // namespace rootclust
