#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "maxapprox/fitting.hpp"
#include "maxapprox/l2.hpp"
#include "maxapprox/net_json.hpp"
#include "maxapprox/networks.hpp"
#include "maxapprox/oracles.hpp"
#include "maxapprox/verify.hpp"

namespace {

using maxapprox::Rational;
using maxapprox::Vector;
using OrderedJson = nlohmann::ordered_json;

struct OutputTarget {
    std::string path;  // empty means stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file: " + path);
        f << text;
    }
};

std::set<int> parse_orders(const std::string& text) {
    std::set<int> orders;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in order list");
        orders.insert(std::stoi(item));
    }
    if (orders.empty()) throw std::invalid_argument("order list is empty");
    return orders;
}

Vector parse_vector(const std::string& text) {
    Vector x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) x.push_back(maxapprox::parse_rational(item));
    if (x.empty()) throw std::invalid_argument("input vector is empty");
    return x;
}

OrderedJson orders_json(const std::set<int>& orders) {
    OrderedJson j = OrderedJson::array();
    for (int r : orders) j.push_back(r);
    return j;
}

OrderedJson manifest(const std::string& command, OrderedJson parameters,
                     const OutputTarget& out, std::optional<std::uint64_t> seed = std::nullopt) {
    OrderedJson m;
    m["command"] = command;
    m["parameters"] = std::move(parameters);
    if (seed) m["seed"] = *seed;
    m["version"] = maxapprox::kVersion;
    m["outputs"] = OrderedJson::array({out.path.empty() ? "stdout" : out.path});
    return m;
}

OrderedJson rational_pair(const Rational& q) {
    OrderedJson j;
    j["exact"] = maxapprox::to_fraction_string(q);
    j["decimal"] = maxapprox::to_double(q);
    return j;
}

void emit_json(const OrderedJson& doc, const OutputTarget& out) {
    out.write(doc.dump(2) + "\n");
}

int cmd_table(int d_max, const std::string& format, const OutputTarget& out) {
    if (d_max < 2 || d_max > 6)
        throw std::invalid_argument("table supports 2 <= d-max <= 6");
    const auto rows = maxapprox::enumerate_table(d_max);
    if (format == "csv") {
        std::string text = "d,R,err_exact,err_decimal\n";
        for (const auto& row : rows) {
            std::string orders;
            for (int r : row.orders) orders += (orders.empty() ? "" : ",") + std::to_string(r);
            text += std::to_string(row.d) + ",\"" + orders + "\"," +
                    maxapprox::to_fraction_string(row.err) + "," +
                    maxapprox::to_decimal_string(row.err) + "\n";
        }
        out.write(text);
        return 0;
    }
    OrderedJson doc;
    OrderedJson params;
    params["d_max"] = d_max;
    params["format"] = format;
    doc["manifest"] = manifest("table", std::move(params), out);
    doc["rows"] = OrderedJson::array();
    for (const auto& row : rows) {
        OrderedJson j;
        j["d"] = row.d;
        j["R"] = orders_json(row.orders);
        j["err_exact"] = maxapprox::to_fraction_string(row.err);
        j["err_decimal"] = maxapprox::to_double(row.err);
        doc["rows"].push_back(std::move(j));
    }
    emit_json(doc, out);
    return 0;
}

OrderedJson estimator_json(const maxapprox::REstimator& est) {
    OrderedJson j;
    j["d"] = est.d;
    j["R"] = orders_json(est.orders);
    if (est.has_intercept()) j["beta0"] = rational_pair(est.beta0);
    OrderedJson betas;
    for (const auto& [r, beta] : est.betas) betas[std::to_string(r)] = rational_pair(beta);
    j["betas"] = std::move(betas);
    return j;
}

int cmd_fit(int d, const std::string& orders_text, const OutputTarget& out) {
    const std::set<int> orders = parse_orders(orders_text);
    const maxapprox::SolveReport report = maxapprox::fit_optimal(d, orders);

    OrderedJson doc;
    OrderedJson params;
    params["d"] = d;
    params["R"] = orders_json(orders);
    doc["manifest"] = manifest("fit", std::move(params), out);
    doc["estimator"] = estimator_json(report.estimator);
    doc["err"] = rational_pair(report.err);
    doc["profile"] = OrderedJson::array();
    for (const Rational& p : report.profile) doc["profile"].push_back(rational_pair(p));
    doc["duals"] = OrderedJson::array();
    for (const Rational& y : report.duals)
        doc["duals"].push_back(maxapprox::to_fraction_string(y));
    doc["certified"] = maxapprox::verify_certificate(report);
    emit_json(doc, out);
    return 0;
}

int cmd_coeffs_full(int d, const OutputTarget& out) {
    const maxapprox::REstimator est = maxapprox::full_coefficients(d);
    OrderedJson doc;
    OrderedJson params;
    params["d"] = d;
    doc["manifest"] = manifest("coeffs-full", std::move(params), out);
    doc["estimator"] = estimator_json(est);
    doc["achieved_err"] = rational_pair(maxapprox::vertex_error(est));
    doc["profile"] = OrderedJson::array();
    for (const Rational& p : maxapprox::error_profile(est))
        doc["profile"].push_back(rational_pair(p));
    emit_json(doc, out);
    return 0;
}

int cmd_widths(int d, const OutputTarget& out) {
    const maxapprox::WidthSchedule w = maxapprox::width_schedule(d);
    const maxapprox::TupleSchedule s = maxapprox::tuple_schedule(d);

    OrderedJson doc;
    OrderedJson params;
    params["d"] = d;
    doc["manifest"] = manifest("widths", std::move(params), out);
    doc["depth"] = w.depth;
    doc["widths"] = w.widths;
    OrderedJson relu = OrderedJson::array();
    for (std::size_t width : w.widths) relu.push_back(4 * width);
    doc["relu_widths"] = std::move(relu);
    doc["repeated_tuples"] = s.repeated_counts;
    if (d >= 3) {
        try {
            doc["full_estimator_widths"] = maxapprox::full_estimator_widths(d);
        } catch (const std::invalid_argument&) {
            doc["full_estimator_widths"] = nullptr;
        }
    }
    emit_json(doc, out);

    // Split table on stderr, one line per final tuple, shared subtuples
    // marked with '*'.
    for (int j = s.depth; j >= 1; --j) {
        const auto& layer = s.tuples[static_cast<std::size_t>(j - 1)];
        std::map<std::vector<int>, std::size_t> multiplicity;
        const auto& finals = s.tuples[static_cast<std::size_t>(s.depth - 1)];
        for (const auto& t : finals)
            for (const auto& [i1, i2] : s.psi[static_cast<std::size_t>(j - 1)])
                ++multiplicity[std::vector<int>(t.begin() + (i1 - 1), t.begin() + i2)];
        std::cerr << "layer j=" << j << " (" << layer.size() << " tuples, "
                  << s.repeated_counts[static_cast<std::size_t>(j - 1)] << " shared)\n";
        for (const auto& t : finals) {
            std::string line = "  ";
            bool first = true;
            for (const auto& [i1, i2] : s.psi[static_cast<std::size_t>(j - 1)]) {
                const std::vector<int> sub(t.begin() + (i1 - 1), t.begin() + i2);
                if (!first) line += " | ";
                first = false;
                line += "[";
                for (std::size_t q = 0; q < sub.size(); ++q)
                    line += (q ? " " : "") + std::to_string(sub[q]);
                line += "]";
                line += multiplicity[sub] >= 2 ? "*" : " ";
            }
            std::cerr << line << "\n";
        }
    }
    return 0;
}

int cmd_l2(int d, const OutputTarget& out) {
    const maxapprox::L2Report rep = maxapprox::l2_optimal(d);
    OrderedJson doc;
    OrderedJson params;
    params["d"] = d;
    doc["manifest"] = manifest("l2", std::move(params), out);
    doc["alpha_star"] = OrderedJson::array();
    for (const Rational& a : rep.alpha_star) doc["alpha_star"].push_back(rational_pair(a));
    doc["alpha0_star"] = rational_pair(rep.alpha0_star);
    doc["normalized_sq_error"] = rational_pair(rep.normalized_sq_error);
    emit_json(doc, out);
    return 0;
}

int cmd_measure(int d, const std::string& orders_text, const std::string& eps_text, long samples,
                std::uint64_t seed, const OutputTarget& out) {
    const std::set<int> orders = parse_orders(orders_text);
    const Rational eps = maxapprox::parse_rational(eps_text);
    const maxapprox::SolveReport rep = maxapprox::fit_optimal(d, orders);
    const Rational bound = maxapprox::measure_lower_bound(d, orders, eps);
    const maxapprox::RandomErrorReport rnd =
        maxapprox::random_error(rep.estimator, samples, seed, maxapprox::to_double(eps));

    OrderedJson doc;
    OrderedJson params;
    params["d"] = d;
    params["R"] = orders_json(orders);
    params["eps"] = maxapprox::to_fraction_string(eps);
    params["samples"] = samples;
    doc["manifest"] = manifest("measure", std::move(params), out, seed);
    doc["err"] = rational_pair(rep.err);
    doc["volume_lower_bound"] = rational_pair(bound);
    // Sharper intercept-based bound, reported for comparison only.
    const Rational beta0 = rep.estimator.beta0;
    if (eps < beta0)
        doc["volume_lower_bound_intercept"] =
            rational_pair(maxapprox::pow_rational(beta0 - eps, static_cast<unsigned>(d)));
    else
        doc["volume_lower_bound_intercept"] = nullptr;
    doc["empirical_fraction"] = rnd.fraction_at_least_eps;
    emit_json(doc, out);
    return 0;
}

int cmd_net_build(const std::string& kind, int d, const std::string& xi_text,
                  const OutputTarget& out) {
    maxapprox::ReluNetwork net;
    if (kind == "pairwise")
        net = maxapprox::pairwise_max_network(d);
    else if (kind == "d1")
        net = maxapprox::d1_estimator_network(d);
    else if (kind == "heaviside")
        net = maxapprox::heaviside_gate(d, maxapprox::parse_rational(xi_text));
    else
        throw std::invalid_argument("unknown network kind: " + kind);

    out.write(maxapprox::export_network_json(net));

    std::cerr << "kind=" << kind << " d=" << d << " relu_stages=" << net.relu_stage_count()
              << "\n";
    const auto vw = net.value_widths();
    const auto rw = net.relu_widths();
    std::cerr << "value_widths:";
    for (std::size_t w : vw) std::cerr << " " << w;
    std::cerr << "\nrelu_widths:";
    for (std::size_t w : rw) std::cerr << " " << w;
    std::cerr << "\n";
    return 0;
}

int cmd_net_eval(const std::string& in_path, const std::string& x_text) {
    std::ifstream f(in_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open network file: " + in_path);
    std::stringstream buf;
    buf << f.rdbuf();
    const maxapprox::ReluNetwork net = maxapprox::import_network_json(buf.str());
    const Vector y = net.forward(parse_vector(x_text));
    std::string line;
    for (std::size_t i = 0; i < y.size(); ++i)
        line += (i ? "," : "") + maxapprox::to_fraction_string(y[i]);
    std::cout << line << "\n";
    return 0;
}

int cmd_net_export(const std::string& in_path, const OutputTarget& out) {
    std::ifstream f(in_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open network file: " + in_path);
    std::stringstream buf;
    buf << f.rdbuf();
    out.write(maxapprox::export_network_json(maxapprox::import_network_json(buf.str())));
    return 0;
}

int cmd_verify(const std::string& suite, int d_max, long samples, std::uint64_t seed,
               const OutputTarget& out) {
    maxapprox::VerifyOptions options;
    options.d_max = d_max;
    options.samples = samples;
    options.seed = seed;
    const auto checks = maxapprox::run_suite(suite, options);

    OrderedJson doc;
    OrderedJson params;
    params["suite"] = suite;
    params["d_max"] = d_max;
    params["samples"] = samples;
    doc["manifest"] = manifest("verify", std::move(params), out, seed);
    doc["checks"] = OrderedJson::array();
    int failed = 0;
    for (const auto& c : checks) {
        OrderedJson j;
        j["name"] = c.name;
        j["expected"] = c.expected;
        j["got"] = c.got;
        j["status"] = c.pass ? "pass" : "fail";
        doc["checks"].push_back(std::move(j));
        if (!c.pass) ++failed;
    }
    doc["passed"] = static_cast<int>(checks.size()) - failed;
    doc["failed"] = failed;
    emit_json(doc, out);
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of affine subpool-max approximations to the max function"};
    app.require_subcommand(1);

    int d = 3, d_max = 4;
    long samples = 100'000;
    std::uint64_t seed = 1;
    std::string orders = "0,2", format = "csv", out_path, kind = "pairwise", xi = "0";
    std::string eps = "1/24", in_path, x_text = "0,0,0", suite = "all";

    auto* table = app.add_subcommand("table", "optimal errors for every order subset");
    table->add_option("--d-max", d_max, "largest dimension")->check(CLI::Range(2, 6));
    table->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--out", out_path, "output file (default stdout)");

    auto* fit = app.add_subcommand("fit", "fit one order subset exactly");
    fit->add_option("--d", d)->required();
    fit->add_option("--r", orders, "comma list, e.g. 0,2")->required();
    fit->add_option("--out", out_path);

    auto* coeffs = app.add_subcommand("coeffs-full", "closed-form full-R coefficients");
    coeffs->add_option("--d", d)->required();
    coeffs->add_option("--out", out_path);

    auto* widths = app.add_subcommand("widths", "layer widths and split table");
    widths->add_option("--d", d)->required();
    widths->add_option("--out", out_path);

    auto* l2 = app.add_subcommand("l2", "least squares analysis");
    l2->add_option("--d", d)->required();
    l2->add_option("--out", out_path);

    auto* measure = app.add_subcommand("measure", "error-volume lower bound check");
    measure->add_option("--d", d)->required();
    measure->add_option("--r", orders)->required();
    measure->add_option("--eps", eps)->required();
    measure->add_option("--samples", samples);
    measure->add_option("--seed", seed);
    measure->add_option("--out", out_path);

    auto* net = app.add_subcommand("net", "build, evaluate or reserialize networks");
    net->require_subcommand(1);
    auto* build = net->add_subcommand("build");
    build->add_option("--kind", kind)->check(CLI::IsMember({"pairwise", "d1", "heaviside"}));
    build->add_option("--d", d)->required();
    build->add_option("--xi", xi, "threshold for heaviside");
    build->add_option("--out", out_path);
    auto* eval = net->add_subcommand("eval");
    eval->add_option("--in", in_path)->required();
    eval->add_option("--x", x_text, "comma list of rationals")->required();
    auto* exportcmd = net->add_subcommand("export");
    exportcmd->add_option("--in", in_path)->required();
    exportcmd->add_option("--out", out_path);

    int verify_d_max = 0;     // 0 = suite default
    long verify_samples = 0;  // 0 = suite default
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("--suite", suite);
    verify->add_option("--d-max", verify_d_max);
    verify->add_option("--samples", verify_samples);
    verify->add_option("--seed", seed);
    verify->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const OutputTarget out{out_path};
    try {
        if (*table) return cmd_table(d_max, format, out);
        if (*fit) return cmd_fit(d, orders, out);
        if (*coeffs) return cmd_coeffs_full(d, out);
        if (*widths) return cmd_widths(d, out);
        if (*l2) return cmd_l2(d, out);
        if (*measure) return cmd_measure(d, orders, eps, samples, seed, out);
        if (*build) return cmd_net_build(kind, d, xi, out);
        if (*eval) return cmd_net_eval(in_path, x_text);
        if (*exportcmd) return cmd_net_export(in_path, out);
        if (*verify) return cmd_verify(suite, verify_d_max, verify_samples, seed, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
