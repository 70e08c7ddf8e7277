#include "rootclust/io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace rootclust {

using nlohmann::json;

namespace {

mpq_class rational_from_decimal(const std::string& text, const std::string& where) {
    std::string digits;
    long frac = 0;
    bool neg = false, dot = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (i == 0 && (ch == '+' || ch == '-')) {
            neg = ch == '-';
        } else if (ch == '.') {
            if (dot) throw SchemaError(where, "malformed decimal '" + text + "'");
            dot = true;
        } else if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            if (dot) ++frac;
            any = true;
        } else {
            throw SchemaError(where, "malformed decimal '" + text + "'");
        }
    }
    if (!any) throw SchemaError(where, "malformed decimal '" + text + "'");
    mpz_class num(digits, 10);
    if (neg) num = -num;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpz_class integer_from_string(const std::string& text, const std::string& where) {
    mpz_class v;
    if (text.empty() || mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0) {
        throw SchemaError(where, "malformed integer '" + text + "'");
    }
    return v;
}

std::string expect_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where, "expected a string");
    return j.get<std::string>();
}

// numeric-spec: {"int": "..."} | {"rational": {"num": "...", "den": "..."}}
//             | {"decimal": "..."} | {"dyadic": "m*2^e"}
mpq_class parse_numeric_spec(const json& j, const std::string& where) {
    if (!j.is_object() || j.size() != 1) {
        throw SchemaError(where, "expected a one-key numeric spec object");
    }
    if (j.contains("int")) {
        return mpq_class(integer_from_string(expect_string(j["int"], where + "/int"),
                                             where + "/int"));
    }
    if (j.contains("rational")) {
        const json& r = j["rational"];
        if (!r.is_object() || !r.contains("num") || !r.contains("den")) {
            throw SchemaError(where + "/rational", "expected {\"num\": ..., \"den\": ...}");
        }
        mpz_class num = integer_from_string(expect_string(r["num"], where + "/rational/num"),
                                            where + "/rational/num");
        mpz_class den = integer_from_string(expect_string(r["den"], where + "/rational/den"),
                                            where + "/rational/den");
        if (den == 0) throw SchemaError(where + "/rational/den", "zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    if (j.contains("decimal")) {
        return rational_from_decimal(expect_string(j["decimal"], where + "/decimal"),
                                     where + "/decimal");
    }
    if (j.contains("dyadic")) {
        auto d = Dyadic::parse(expect_string(j["dyadic"], where + "/dyadic"));
        if (!d) throw SchemaError(where + "/dyadic", "expected the form \"m*2^e\"");
        return d->to_mpq();
    }
    throw SchemaError(where, "unknown numeric spec key");
}

ComplexRational parse_complex_spec(const json& j, const std::string& where) {
    if (j.is_object() && (j.contains("re") || j.contains("im"))) {
        ComplexRational z;
        if (j.contains("re")) z.re = parse_numeric_spec(j["re"], where + "/re");
        if (j.contains("im")) z.im = parse_numeric_spec(j["im"], where + "/im");
        return z;
    }
    return ComplexRational(parse_numeric_spec(j, where), mpq_class(0));
}

json dyadic_json(const Dyadic& d) { return json(d.to_string()); }

json cluster_json(const Cluster& c) {
    return json{{"center", {{"re", c.disc.center.re.to_string()},
                            {"im", c.disc.center.im.to_string()}}},
                {"radius", c.disc.radius.to_string()},
                {"multiplicity", c.multiplicity}};
}

json report_json_obj(const VerificationReport& rep) {
    json v = json::array();
    for (const auto& viol : rep.violations) {
        v.push_back({{"rule", viol.rule}, {"detail", viol.detail}});
    }
    return json{{"ok", rep.ok},
                {"violations", v},
                {"metrics",
                 {{"cluster_count", rep.cluster_count},
                  {"total_multiplicity", rep.total_multiplicity},
                  {"max_radius", rep.max_radius.to_string()}}}};
}

}  // namespace

ParsedPolynomial parse_poly(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("/", "invalid JSON");
    if (!j.is_object()) throw SchemaError("/", "expected an object");
    bool has_coeffs = j.contains("coeffs");
    bool has_roots = j.contains("roots");
    if (has_coeffs == has_roots) {
        throw SchemaError("/", "need exactly one of \"coeffs\" or \"roots\"");
    }
    if (has_coeffs) {
        const json& arr = j["coeffs"];
        if (!arr.is_array() || arr.size() < 2) {
            throw SchemaError("/coeffs", "expected an array of at least 2 coefficients");
        }
        std::vector<ComplexRational> coeffs;
        coeffs.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            coeffs.push_back(parse_complex_spec(arr[i], "/coeffs/" + std::to_string(i)));
        }
        if (coeffs.back().is_zero()) {
            throw SchemaError("/coeffs", "leading coefficient is zero");
        }
        return ParsedPolynomial{OraclePolynomial::from_exact(coeffs), false, {}, 1};
    }
    const json& arr = j["roots"];
    if (!arr.is_array() || arr.empty()) {
        throw SchemaError("/roots", "expected a nonempty array");
    }
    std::vector<RootSpec> roots;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        std::string where = "/roots/" + std::to_string(i);
        if (!e.is_object()) throw SchemaError(where, "expected an object");
        RootSpec rs;
        rs.z.re = e.contains("re") ? parse_numeric_spec(e["re"], where + "/re") : mpq_class(0);
        rs.z.im = e.contains("im") ? parse_numeric_spec(e["im"], where + "/im") : mpq_class(0);
        if (!e.contains("mult")) {
            rs.multiplicity = 1;
        } else if (e["mult"].is_number_unsigned() || e["mult"].is_number_integer()) {
            rs.multiplicity = e["mult"].get<int>();
        } else {
            throw SchemaError(where + "/mult", "expected an integer");
        }
        if (rs.multiplicity < 1) throw SchemaError(where + "/mult", "must be >= 1");
        roots.push_back(std::move(rs));
    }
    mpq_class lcf(1);
    if (j.contains("lcf")) lcf = parse_numeric_spec(j["lcf"], "/lcf");
    if (lcf == 0) throw SchemaError("/lcf", "must be nonzero");
    return ParsedPolynomial{OraclePolynomial::from_roots(roots, lcf), true, roots, lcf};
}

std::pair<ComplexDyadic, Dyadic> parse_box_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw SchemaError("--box", "expected \"cx,cy,w\"");
    auto cx = Dyadic::parse_flexible(parts[0]);
    auto cy = Dyadic::parse_flexible(parts[1]);
    auto w = Dyadic::parse_flexible(parts[2]);
    if (!cx || !cy || !w) throw SchemaError("--box", "components must be dyadic or decimal");
    if (w->sign() <= 0) throw SchemaError("--box", "width must be > 0");
    return {ComplexDyadic(*cx, *cy), *w};
}

Dyadic parse_eps_spec(const std::string& spec) {
    auto eps = Dyadic::parse_flexible(spec);
    if (!eps) throw SchemaError("--eps", "expected \"m*2^e\", \"2^-k\", or a decimal");
    if (eps->sign() <= 0) throw SchemaError("--eps", "must be > 0");
    return *eps;
}

std::string clusters_to_json(const SolveResult& result) {
    return clusters_to_json(result, nullptr);
}

std::string clusters_to_json(const SolveResult& result, const VerificationReport* report) {
    json out;
    json arr = json::array();
    for (const Cluster& c : result.clusters) arr.push_back(cluster_json(c));
    out["clusters"] = arr;
    out["eps_eff"] = dyadic_json(result.eps_eff);
    out["stats_version"] = 1;
    if (report != nullptr) out["verification"] = report_json_obj(*report);
    return out.dump(2) + "\n";
}

std::string stats_to_json(const RunStats& s) {
    json widths = json::array();
    for (const Dyadic& w : s.output_widths) widths.push_back(w.to_string());
    json square_widths = json::array();
    for (const Dyadic& w : s.output_square_widths) square_widths.push_back(w.to_string());
    json out{{"stats_version", 1},
             {"boxes_created", s.boxes_created},
             {"components_processed", s.components_processed},
             {"newton_success", s.newton_success},
             {"newton_fail", s.newton_fail},
             {"tests_run", s.tests_run},
             {"soft_compares", s.soft_compares},
             {"max_precision_bits", s.max_precision_bits},
             {"max_tree_depth", s.max_tree_depth},
             {"preprocessing_boxes", s.preprocessing_boxes},
             {"main_boxes", s.main_boxes},
             {"newton_children_gt4", s.newton_children_gt4},
             {"eps_eff", s.eps_eff.to_string()},
             {"min_preprocessing_width", s.min_preprocessing_width.to_string()},
             {"output_widths", widths},
             {"output_square_widths", square_widths},
             {"wall_seconds", s.wall_seconds}};
    return out.dump(2) + "\n";
}

std::string report_to_json(const VerificationReport& report) {
    return report_json_obj(report).dump(2) + "\n";
}

std::string instance_to_json(const InstanceSpec& spec) {
    json roots = json::array();
    for (const auto& rs : spec.roots) {
        roots.push_back({{"re", {{"rational", {{"num", rs.z.re.get_num().get_str()},
                                               {"den", rs.z.re.get_den().get_str()}}}}},
                         {"im", {{"rational", {{"num", rs.z.im.get_num().get_str()},
                                               {"den", rs.z.im.get_den().get_str()}}}}},
                         {"mult", rs.multiplicity}});
    }
    json out{{"roots", roots},
             {"lcf", {{"rational", {{"num", spec.lcf.get_num().get_str()},
                                    {"den", spec.lcf.get_den().get_str()}}}}},
             {"box", {{"cx", spec.b0_center.re.to_string()},
                      {"cy", spec.b0_center.im.to_string()},
                      {"w", spec.b0_width.to_string()}}},
             {"eps", spec.eps.to_string()},
             {"seed", spec.seed},
             {"profile", spec.profile}};
    return out.dump(2) + "\n";
}

std::string depth_table_to_csv(const std::vector<DepthBenchRow>& rows) {
    std::ostringstream os;
    os << "eps,max_tree_depth,boxes_created,max_precision_bits,wall_seconds\n";
    for (const auto& r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", r.wall_seconds);
        os << r.eps.to_string() << ',' << r.max_tree_depth << ',' << r.boxes_created << ','
           << r.max_precision_bits << ',' << buf << '\n';
    }
    return os.str();
}

std::string depth_table_to_json(const std::vector<DepthBenchRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"eps", r.eps.to_string()},
                       {"max_tree_depth", r.max_tree_depth},
                       {"boxes_created", r.boxes_created},
                       {"max_precision_bits", r.max_precision_bits},
                       {"wall_seconds", r.wall_seconds}});
    }
    return arr.dump(2) + "\n";
}

namespace {

struct SvgMapper {
    double x0, y0, scale;
    static constexpr double kSize = 1000.0;

    explicit SvgMapper(const Frame& frame) {
        Rect root = frame.root_rect();
        x0 = root.xlo.to_double();
        y0 = root.ylo.to_double();
        scale = kSize / (root.xhi.to_double() - x0);
    }
    double px(const Dyadic& x) const { return (x.to_double() - x0) * scale; }
    // SVG y grows downward.
    double py(const Dyadic& y) const { return kSize - (y.to_double() - y0) * scale; }
};

void svg_rect(std::ostringstream& os, const SvgMapper& m, const Rect& r,
              const char* style) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" %s/>\n",
                  m.px(r.xlo), m.py(r.yhi), (r.xhi.to_double() - r.xlo.to_double()) * m.scale,
                  (r.yhi.to_double() - r.ylo.to_double()) * m.scale, style);
    os << buf;
}

}  // namespace

std::string emit_svg(const RunRecord& record) {
    std::ostringstream os;
    SvgMapper m(record.frame);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
          "viewBox=\"0 0 1000 1000\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";

    for (const auto& [depth, box] : record.boxes) {
        int shade = 235 - (depth * 13) % 160;
        char style[128];
        std::snprintf(style, sizeof style,
                      "fill=\"rgb(%d,%d,245)\" stroke=\"rgb(90,90,120)\" stroke-width=\"0.4\"",
                      shade, shade);
        svg_rect(os, m, record.frame.box_rect(box), style);
    }

    svg_rect(os, m, record.frame.root_rect(),
             "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
    svg_rect(os, m, record.frame.b0_rect(),
             "fill=\"none\" stroke=\"rgb(200,60,60)\" stroke-width=\"1.5\"");

    for (const Cluster& c : record.clusters) {
        double cx = m.px(c.disc.center.re);
        double cy = m.py(c.disc.center.im);
        double r = c.disc.radius.to_double() * m.scale;
        if (r < 2.0) r = 2.0;  // keep tiny output discs visible
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" "
                      "stroke=\"rgb(20,120,20)\" stroke-width=\"1.2\"/>\n",
                      cx, cy, r);
        os << buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.3f\" y=\"%.3f\" font-size=\"14\" "
                      "fill=\"rgb(20,120,20)\">%d</text>\n",
                      cx + r + 2.0, cy, c.multiplicity);
        os << buf;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace rootclust
