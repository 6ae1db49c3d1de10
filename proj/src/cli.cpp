#include "qcx/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "qcx/betanum.hpp"
#include "qcx/convexity.hpp"
#include "qcx/modelset.hpp"
#include "qcx/serialize.hpp"
#include "qcx/witness.hpp"

namespace qcx::cli {

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level_from_env() {
    const char *v = std::getenv("QCX_LOG");
    if (v == nullptr)
        return LogLevel::Error;
    const std::string s(v);
    if (s == "debug")
        return LogLevel::Debug;
    if (s == "info")
        return LogLevel::Info;
    return LogLevel::Error;
}

class Logger {
public:
    explicit Logger(std::ostream &err) : err_(err), level_(log_level_from_env()) {}

    void error(const std::string &msg) const { emit(LogLevel::Error, "error", msg); }
    void info(const std::string &msg) const { emit(LogLevel::Info, "info", msg); }
    void debug(const std::string &msg) const { emit(LogLevel::Debug, "debug", msg); }

private:
    void emit(LogLevel lvl, const char *tag, const std::string &msg) const {
        if (static_cast<int>(lvl) <= static_cast<int>(level_))
            err_ << "qcx[" << tag << "]: " << msg << '\n';
    }

    std::ostream &err_;
    LogLevel level_;
};

enum class Format { Plain, Json, Csv };

struct Common {
    int m = 1;
    std::string sign = "+";
    std::string format = "plain";

    RingSpec ring() const {
        int eps = 0;
        if (sign == "+" || sign == "+1" || sign == "1")
            eps = 1;
        else if (sign == "-" || sign == "-1")
            eps = -1;
        else
            throw ParseError("--sign must be + or -", 0);
        return RingSpec::make(m, eps);
    }

    Format fmt() const {
        if (format == "json")
            return Format::Json;
        if (format == "csv")
            return Format::Csv;
        return Format::Plain;
    }
};

void add_common(CLI::App *sub, Common &c, bool csv = false) {
    sub->add_option("--m", c.m, "ring parameter m in x^2 = m x + sign");
    sub->add_option("--sign", c.sign, "+ or -");
    std::vector<std::string> formats{"plain", "json"};
    if (csv)
        formats.emplace_back("csv");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats));
}

Witness read_witness(const std::string &arg) {
    std::string text = arg;
    if (!arg.empty() && arg.front() == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw Error(Errc::InvalidArgument, "cannot open " + arg.substr(1));
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("witness JSON: ") + e.what(), e.byte);
    }
    return witness_from_json(j);
}

void print_json(std::ostream &out, const Json &j) { out << j.dump(2) << '\n'; }

std::string digits_to_string(const std::vector<int> &ds) {
    std::string s;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(ds[i]);
    }
    return s;
}

// ---------------------------------------------------------- subcommands

int cmd_ring_info(const Common &c, int digits, std::ostream &out) {
    const RingSpec ring = c.ring();
    const QuadInt beta = QuadInt::beta(ring);
    const RenyiRep renyi = renyi_rep_of_one(ring);
    const std::string b = approx_value(QuadRat(beta), digits);
    const std::string bc = approx_value(QuadRat(beta.conj()), digits);
    const QuadInt inv = QuadInt::inv_beta(ring);
    if (c.fmt() == Format::Json) {
        Json j;
        j["ring"] = ring_to_json(ring);
        j["discriminant"] = ring.discriminant();
        j["beta"] = b;
        j["conj_beta"] = bc;
        j["floor_beta"] = ring.floor_beta();
        j["inv_beta"] = quadint_to_json(inv);
        j["renyi_one"] = {{"prefix", renyi.prefix}, {"period", renyi.period}};
        j["reduced_op_count"] = ring.reduced_op_count();
        print_json(out, j);
        return kExitOk;
    }
    out << "ring " << ring.name() << ": beta^2 = " << ring.m() << " beta " << (ring.eps() > 0 ? "+" : "-")
        << " 1\n";
    out << "discriminant " << ring.discriminant() << '\n';
    out << "beta ≈ " << b << '\n';
    out << "beta' ≈ " << bc << '\n';
    out << "[beta] = " << ring.floor_beta() << '\n';
    out << "unit 1/beta = " << inv.to_pair_string() << '\n';
    out << "renyi(1) = " << digits_to_string(renyi.prefix);
    if (!renyi.period.empty())
        out << " (" << digits_to_string(renyi.period) << ")^inf";
    out << '\n';
    out << "reduced operation count = " << ring.reduced_op_count() << '\n';
    return kExitOk;
}

int cmd_expand(const Common &c, const std::string &x_text, int depth, std::ostream &out) {
    const RingSpec ring = c.ring();
    const QuadInt x = parse_quadint(x_text, ring);
    Json j;
    j["x"] = quadint_to_json(x);
    j["in_fin"] = in_fin(x);
    try {
        const SignedExpansion e = expand_signed(x, depth);
        const std::string text = (e.negative ? "-" : "") + e.magnitude.to_string();
        if (c.fmt() == Format::Json) {
            j["finite"] = true;
            j["negative"] = e.negative;
            j["top"] = e.magnitude.top();
            j["digits"] = e.magnitude.digits();
            j["string"] = text;
            j["admissible"] = is_admissible(e.magnitude);
            print_json(out, j);
        } else {
            out << text << '\n';
        }
        return kExitOk;
    } catch (const NotFiniteError &err) {
        if (c.fmt() == Format::Json) {
            j["finite"] = false;
            j["norm"] = integer_to_json(err.norm());
            j["depth"] = depth;
            print_json(out, j);
        } else {
            out << "not finite within " << depth << " digits (N(x) = " << err.norm().get_str() << ")\n";
        }
        return kExitCheckFailed;
    }
}

int cmd_admissible(const Common &c, const std::string &digits, std::ostream &out) {
    const RingSpec ring = c.ring();
    const DigitString d = DigitString::parse(ring, digits);
    const bool ok = is_admissible(d);
    if (c.fmt() == Format::Json) {
        Json j;
        j["digits"] = d.to_string();
        j["admissible"] = ok;
        j["value"] = quadint_to_json(evaluate(d));
        print_json(out, j);
    } else {
        out << (ok ? "admissible" : "not admissible") << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

Json gaps_to_json(const std::vector<GapCount> &gs) {
    Json arr = Json::array();
    for (const auto &g : gs) {
        Json e = quadint_to_json(g.gap);
        e["value"] = display_value(g.gap);
        e["count"] = g.count;
        arr.push_back(std::move(e));
    }
    return arr;
}

void print_points(std::ostream &out, Format fmt, const PointSet &ps) {
    if (fmt == Format::Csv) {
        out << kPointCsvHeader << '\n';
        for (const auto &p : ps.points())
            out << point_to_csv(p) << '\n';
    } else {
        for (const auto &p : ps.points())
            out << p.to_pair_string() << '\t' << format_double(display_value(p)) << '\n';
    }
}

Json points_to_json(const PointSet &ps) {
    Json arr = Json::array();
    for (const auto &p : ps.points())
        arr.push_back(point_to_json(p));
    return arr;
}

struct ModelsetArgs {
    std::string window = "0,0:1,0";
    std::string range;
    std::string check_s;
    std::string hull;
    bool gaps = false;
};

int cmd_hull(const Common &c, const std::string &list, std::ostream &out, const Logger &log) {
    const RingSpec ring = c.ring();
    const auto pts = parse_quadint_list(list, ring);
    try {
        const HullChain h = hull_reconstruct(pts);
        if (c.fmt() == Format::Json) {
            Json j;
            j["hull"] = {quadint_to_json(h.hull.lo().as_quadint()), quadint_to_json(h.hull.hi().as_quadint())};
            Json chain = Json::array();
            for (const auto &s : h.unit_starts)
                chain.push_back(quadint_to_json(s));
            j["chain"] = std::move(chain);
            print_json(out, j);
        } else {
            out << "hull " << h.hull.to_string() << '\n';
            for (const auto &s : h.unit_starts)
                out << "unit interval from " << s.to_pair_string() << '\n';
        }
        return kExitOk;
    } catch (const ChainBrokenError &e) {
        log.info(e.what());
        if (c.fmt() == Format::Json) {
            Json j;
            j["chain_broken"] = true;
            j["from"] = quadint_to_json(e.from());
            j["to"] = quadint_to_json(e.to());
            j["gap"] = quadint_to_json(e.gap());
            print_json(out, j);
        } else {
            out << "chain broken: gap " << e.gap().to_pair_string() << " between " << e.from().to_pair_string()
                << " and " << e.to().to_pair_string() << '\n';
        }
        return kExitCheckFailed;
    }
}

int cmd_modelset(const Common &c, const ModelsetArgs &a, std::ostream &out, const Logger &log) {
    if (!a.hull.empty())
        return cmd_hull(c, a.hull, out, log);
    const RingSpec ring = c.ring();
    if (a.range.empty())
        throw Error(Errc::InvalidArgument, "--range is required");
    const Interval window = parse_interval(a.window, ring);
    const Interval range = parse_interval(a.range, ring);
    const PointSet ps = enumerate(ring, window, range);
    log.info("enumerated " + std::to_string(ps.size()) + " points");

    std::optional<ConvexityReport> report;
    if (!a.check_s.empty())
        report = check_convexity(ps, parse_quadint(a.check_s, ring), window);
    std::vector<GapCount> gs;
    if (a.gaps && ps.size() >= 2)
        gs = gaps(ps);

    if (c.fmt() == Format::Json) {
        Json j;
        j["ring"] = ring_to_json(ring);
        j["window"] = window.to_string();
        j["range"] = range.to_string();
        j["count"] = ps.size();
        j["points"] = points_to_json(ps);
        if (a.gaps)
            j["gaps"] = gaps_to_json(gs);
        if (report) {
            Json r;
            r["pairs_checked"] = report->pairs_checked;
            r["pairs_in_range"] = report->pairs_in_range;
            Json vs = Json::array();
            for (const auto &v : report->violations) {
                Json e;
                e["x"] = quadint_to_json(v.x);
                e["y"] = quadint_to_json(v.y);
                e["z"] = quadint_to_json(v.z);
                e["conj_in_window"] = v.conj_in_window;
                vs.push_back(std::move(e));
            }
            r["violations"] = std::move(vs);
            j["convexity"] = std::move(r);
        }
        print_json(out, j);
    } else {
        print_points(out, c.fmt(), ps);
        if (c.fmt() == Format::Plain) {
            for (const auto &g : gs)
                out << "gap " << g.gap.to_pair_string() << " x" << g.count << '\n';
            if (report) {
                out << "convexity: " << report->violations.size() << " violations in " << report->pairs_in_range
                    << " pairs\n";
                for (const auto &v : report->violations)
                    out << "missing " << v.z.to_pair_string() << " from " << v.x.to_pair_string() << " and "
                        << v.y.to_pair_string() << '\n';
            }
        }
    }
    return report && !report->ok() ? kExitCheckFailed : kExitOk;
}

struct ClosureArgs {
    std::string seeds = "0,0;1,0";
    std::vector<std::string> params;
    int depth = 3;
    std::string range;
    std::string check_window;
    bool divisibility = false;
    bool gaps = false;
    std::size_t cap = kDefaultNodeCap;
};

int cmd_closure(const Common &c, const ClosureArgs &a, std::ostream &out, const Logger &log) {
    const RingSpec ring = c.ring();
    if (a.params.empty())
        throw Error(Errc::InvalidArgument, "at least one --s is required");
    std::vector<QuadInt> params;
    for (const auto &p : a.params)
        params.push_back(parse_quadint(p, ring));
    const ParamSet ps(ring, params);
    std::optional<Interval> range;
    if (!a.range.empty())
        range = parse_interval(a.range, ring);
    const PointSet cl = closure_bfs(parse_quadint_list(a.seeds, ring), ps, a.depth, range, a.cap);
    log.info("closure has " + std::to_string(cl.size()) + " points in range");

    std::size_t outside = 0;
    if (!a.check_window.empty()) {
        const Interval window = parse_interval(a.check_window, ring);
        for (const auto &p : cl.points())
            outside += window.contains(p.conj()) ? 0 : 1;
    }
    std::size_t neither = 0;
    if (a.divisibility) {
        for (const auto &p : cl.points())
            neither += divisibility_filter(p, params.front()) == Divisibility::Neither ? 1 : 0;
    }
    std::vector<GapCount> gs;
    if (a.gaps && cl.size() >= 2)
        gs = gaps(cl);

    if (c.fmt() == Format::Json) {
        Json j;
        j["ring"] = ring_to_json(ring);
        j["depth"] = a.depth;
        j["count"] = cl.size();
        j["points"] = points_to_json(cl);
        if (a.gaps)
            j["gaps"] = gaps_to_json(gs);
        if (!a.check_window.empty())
            j["outside_window"] = outside;
        if (a.divisibility)
            j["neither"] = neither;
        print_json(out, j);
    } else {
        print_points(out, c.fmt(), cl);
        if (c.fmt() == Format::Plain) {
            for (const auto &g : gs)
                out << "gap " << g.gap.to_pair_string() << " x" << g.count << '\n';
            if (!a.check_window.empty())
                out << "outside window: " << outside << '\n';
            if (a.divisibility)
                out << "neither divisible: " << neither << '\n';
        }
    }
    return outside + neither == 0 ? kExitOk : kExitCheckFailed;
}

Json witness_report(const Witness &w, const QuadInt &claimed, Side side) {
    Json j = witness_to_json(w);
    const VerifyResult v = verify_witness(w, claimed, side);
    j["side"] = side == Side::Window ? "window" : "direct";
    j["value"] = quadint_to_json(evaluate_witness(w, side));
    j["verified"] = v.ok;
    if (!v.ok)
        j["failure"] = v.location + ": " + v.message;
    j["ops"] = w.ops_used();
    j["depth"] = w.depth();
    return j;
}

struct WitnessArgs {
    std::string target;
    std::string offset = "0,0";
    std::string side = "window";
    bool reduce = false;
    int max_op = 0;
};

int cmd_witness(const Common &c, const WitnessArgs &a, std::ostream &out) {
    const RingSpec ring = c.ring();
    const QuadInt target = parse_quadint(a.target, ring);
    const QuadInt offset = parse_quadint(a.offset, ring);
    const Side side = a.side == "direct" ? Side::Direct : Side::Window;
    // Direct side targets are generated through their conjugates.
    Witness w = side == Side::Window ? witness_for(target, offset) : witness_for(target.conj(), offset.conj());
    if (a.reduce)
        w = reduce_witness(w, a.max_op > 0 ? a.max_op : ring.reduced_op_count());
    const Json j = witness_report(w, target, side);
    if (c.fmt() == Format::Json)
        print_json(out, j);
    else
        out << j.dump() << '\n';
    return j["verified"].get<bool>() ? kExitOk : kExitCheckFailed;
}

struct ReduceArgs {
    std::string witness;
    int max_op = 0;
    int template_index = 0;
    int depth = kTemplateSearchDepth;
};

int cmd_reduce(const Common &c, const ReduceArgs &a, std::ostream &out) {
    if (a.template_index > 0) {
        const RingSpec ring = c.ring();
        const int max_op = a.max_op > 0 ? a.max_op : ring.reduced_op_count();
        const auto t = find_rewrite_template(ring, a.template_index, max_op, a.depth);
        Json j;
        j["ring"] = ring_to_json(ring);
        j["index"] = a.template_index;
        j["max_op"] = max_op;
        j["max_depth"] = a.depth;
        j["found"] = t.has_value();
        if (t) {
            const Witness w(ring, *t);
            j["template"] = node_to_json(*t);
            j["depth"] = w.depth();
        }
        if (c.fmt() == Format::Json)
            print_json(out, j);
        else
            out << (t ? "found: " + node_to_json(*t).dump() : std::string("not found")) << '\n';
        return t ? kExitOk : kExitCheckFailed;
    }
    if (a.witness.empty())
        throw Error(Errc::InvalidArgument, "--witness or --template is required");
    const Witness w = read_witness(a.witness);
    const QuadInt before = evaluate_witness(w);
    try {
        const Witness r = reduce_witness(w, a.max_op > 0 ? a.max_op : w.ring().reduced_op_count());
        const Json j = witness_report(r, before, Side::Window);
        if (c.fmt() == Format::Json)
            print_json(out, j);
        else
            out << j.dump() << '\n';
        return j["verified"].get<bool>() ? kExitOk : kExitCheckFailed;
    } catch (const NoRewriteError &e) {
        out << (c.fmt() == Format::Json ? Json{{"reduced", false}, {"stuck_index", e.index()}}.dump(2)
                                        : std::string("no rewrite for index ") + std::to_string(e.index()))
            << '\n';
        return kExitCheckFailed;
    }
}

int cmd_pinch(const Common &c, const std::string &witness, int n, std::ostream &out) {
    const Witness w = read_witness(witness);
    const int order = n > 0 ? n : w.depth();
    const PinchForm f = pinch_flatten(w, order);
    const QuadInt value = evaluate_witness(w) - w.offset();
    const bool matches = evaluate_pinch(w.ring(), f) == value;
    Json j;
    j["op"] = f.op;
    j["n"] = f.n;
    Json coeffs = Json::array();
    for (const auto &b : f.coeffs)
        coeffs.push_back(integer_to_json(b));
    j["coefficients"] = std::move(coeffs);
    j["value"] = quadint_to_json(value);
    j["matches"] = matches;
    if (c.fmt() == Format::Json)
        print_json(out, j);
    else
        out << j.dump() << '\n';
    return matches ? kExitOk : kExitCheckFailed;
}

Json forcing_to_json(const std::vector<QuadInt> &forcing) {
    Json arr = Json::array();
    for (const auto &s : forcing)
        arr.push_back({{"window", quadint_to_json(s)}, {"direct", quadint_to_json(s.conj())}});
    return arr;
}

int cmd_classify(const Common &c, std::ostream &out) {
    const RingSpec ring = c.ring();
    const auto forcing = classify_forcing(ring);
    if (c.fmt() == Format::Json) {
        Json j;
        j["ring"] = ring_to_json(ring);
        j["forcing"] = forcing_to_json(forcing);
        print_json(out, j);
    } else {
        out << "ring " << ring.name() << ": " << forcing.size() << " forcing parameter(s)\n";
        for (const auto &s : forcing)
            out << "s' = " << s.to_pair_string() << "  s = " << s.conj().to_pair_string() << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const Common &c, int m_max, std::ostream &out) {
    const auto rows = forcing_sweep(m_max);
    std::size_t nonempty = 0;
    bool all_match = true;
    for (const auto &r : rows) {
        nonempty += r.forcing.empty() ? 0 : 1;
        all_match = all_match && r.matches_expectation();
    }
    if (c.fmt() == Format::Json) {
        Json j;
        j["max"] = m_max;
        Json arr = Json::array();
        for (const auto &r : rows) {
            Json e;
            e["ring"] = ring_to_json(r.ring);
            e["forcing"] = forcing_to_json(r.forcing);
            e["expected_nonempty"] = r.expected_nonempty;
            arr.push_back(std::move(e));
        }
        j["rows"] = std::move(arr);
        j["forcing_rows"] = nonempty;
        j["matches_expectation"] = all_match;
        print_json(out, j);
    } else {
        for (const auto &r : rows) {
            out << r.ring.name();
            if (r.forcing.empty())
                out << "  -";
            for (const auto &s : r.forcing)
                out << "  s'=" << s.to_pair_string() << " s=" << s.conj().to_pair_string();
            out << '\n';
        }
        out << nonempty << " forcing ring(s)\n";
    }
    return all_match ? kExitOk : kExitCheckFailed;
}

int cmd_gapwitness(const Common &c, const std::string &y_text, const std::string &s_text, std::ostream &out) {
    const RingSpec ring = c.ring();
    const QuadInt y = parse_quadint(y_text, ring);
    const QuadInt s = parse_quadint(s_text, ring);
    const Divisibility d = divisibility_filter(y, s);
    if (c.fmt() == Format::Json) {
        Json j;
        j["y"] = quadint_to_json(y);
        j["s"] = quadint_to_json(s);
        j["norm_s"] = integer_to_json(s.norm());
        j["class"] = std::string(divisibility_name(d));
        j["excluded"] = d == Divisibility::Neither;
        print_json(out, j);
    } else {
        out << divisibility_name(d);
        if (d == Divisibility::Neither)
            out << ": " << y.to_pair_string() << " is not in Cl_s{0,1} for s = " << s.to_pair_string();
        out << '\n';
    }
    return d == Divisibility::Neither ? kExitCheckFailed : kExitOk;
}

int cmd_params(const Common &c, std::ostream &out) {
    const RingSpec ring = c.ring();
    const ParamSet ps = param_set_N(ring);
    if (c.fmt() == Format::Json) {
        Json j;
        j["ring"] = ring_to_json(ring);
        j["count"] = ps.size();
        Json arr = Json::array();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            Json e;
            e["index"] = i + 1;
            e["window"] = quadint_to_json(ps.params()[i].conj());
            e["direct"] = quadint_to_json(ps.params()[i]);
            arr.push_back(std::move(e));
        }
        j["params"] = std::move(arr);
        print_json(out, j);
    } else {
        for (std::size_t i = 0; i < ps.size(); ++i)
            out << "s' = " << i + 1 << "/beta = " << ps.params()[i].conj().to_pair_string()
                << "  s = " << ps.params()[i].to_pair_string() << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    const Logger log(err);
    CLI::App app{"Exact arithmetic and s-convexity tools for quadratic Pisot model sets", "qcx"};
    app.require_subcommand(1);

    Common common;
    int digits = 4;
    auto *ring_info = app.add_subcommand("ring-info", "ring constants");
    add_common(ring_info, common);
    ring_info->add_option("--digits", digits, "fractional digits")->check(CLI::Range(1, 200));

    std::string x_text;
    int depth = kDefaultExpansionDepth;
    auto *expand = app.add_subcommand("expand", "greedy beta-expansion");
    add_common(expand, common);
    expand->add_option("--x", x_text, "element a,b")->required();
    expand->add_option("--depth", depth, "maximum number of digits")->check(CLI::PositiveNumber);

    std::string digit_text;
    auto *admissible = app.add_subcommand("admissible", "Parry admissibility of a digit string");
    add_common(admissible, common);
    admissible->add_option("--digits", digit_text, "digit string, e.g. 10.01")->required();

    ModelsetArgs ms;
    auto *modelset = app.add_subcommand("modelset", "enumerate a model set, check convexity, reconstruct hulls");
    add_common(modelset, common, true);
    modelset->add_option("--window", ms.window, "acceptance window lo:hi[:cc|co|oc|oo]");
    modelset->add_option("--range", ms.range, "direct space range lo:hi[:flags]");
    modelset->add_option("--check-s", ms.check_s, "check s-convexity for s = a,b");
    modelset->add_flag("--gaps", ms.gaps, "report gap statistics");
    modelset->add_option("--hull", ms.hull, "window side points a,b;a,b;... for hull reconstruction");

    ClosureArgs cl;
    auto *closure = app.add_subcommand("closure", "truncated closure under x ⊢_s y");
    add_common(closure, common, true);
    closure->add_option("--seeds", cl.seeds, "seeds a,b;a,b;...");
    closure->add_option("--s", cl.params, "parameter a,b (repeatable)")->required();
    closure->add_option("--depth", cl.depth, "number of rounds")->check(CLI::NonNegativeNumber);
    closure->add_option("--range", cl.range, "output range lo:hi[:flags]");
    closure->add_option("--check-window", cl.check_window, "fail unless every conjugate lies in this window");
    closure->add_flag("--divisibility", cl.divisibility, "fail if the first parameter divides neither y nor y-1");
    closure->add_flag("--gaps", cl.gaps, "report gap statistics");
    closure->add_option("--cap", cl.cap, "maximum number of values");

    WitnessArgs wa;
    auto *witness = app.add_subcommand("witness", "generation witness for a target");
    add_common(witness, common);
    witness->add_option("--target", wa.target, "target a,b")->required();
    witness->add_option("--offset", wa.offset, "seed offset c (seeds c, c+1)");
    witness->add_option("--side", wa.side, "window or direct")->check(CLI::IsMember({"window", "direct"}));
    witness->add_flag("--reduce", wa.reduce, "rewrite to operations <= J");
    witness->add_option("--J", wa.max_op, "operation bound for --reduce");

    ReduceArgs ra;
    auto *reduce = app.add_subcommand("reduce", "reduce a witness or probe a rewrite template");
    add_common(reduce, common);
    reduce->add_option("--witness", ra.witness, "witness JSON or @file");
    reduce->add_option("--J", ra.max_op, "operation bound");
    reduce->add_option("--template", ra.template_index, "search a template for this index");
    reduce->add_option("--depth", ra.depth, "template search depth")->check(CLI::PositiveNumber);

    std::string pinch_witness;
    int pinch_n = 0;
    auto *pinch = app.add_subcommand("pinch", "flatten a single-parameter witness");
    add_common(pinch, common);
    pinch->add_option("--witness", pinch_witness, "witness JSON or @file")->required();
    pinch->add_option("--n", pinch_n, "padding depth (default: witness depth)");

    auto *classify = app.add_subcommand("classify", "model-set-forcing parameters of one ring");
    add_common(classify, common);

    int sweep_max = 30;
    auto *sweep = app.add_subcommand("sweep", "classify all rings up to --max");
    add_common(sweep, common);
    sweep->add_option("--max", sweep_max, "largest m")->check(CLI::Range(4, 100000));

    std::string gap_y, gap_s;
    auto *gapwitness = app.add_subcommand("gapwitness", "divisibility certificate for y against s");
    add_common(gapwitness, common);
    gapwitness->add_option("--y", gap_y, "element a,b")->required();
    gapwitness->add_option("--s", gap_s, "window side parameter a,b")->required();

    auto *params = app.add_subcommand("params", "parameter set for the finite characterization");
    add_common(params, common);

    std::vector<std::string> argv_store{"qcx"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : argv_store)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << '\n' << app.help();
        return kExitBadInput;
    }

    try {
        if (ring_info->parsed())
            return cmd_ring_info(common, digits, out);
        if (expand->parsed())
            return cmd_expand(common, x_text, depth, out);
        if (admissible->parsed())
            return cmd_admissible(common, digit_text, out);
        if (modelset->parsed())
            return cmd_modelset(common, ms, out, log);
        if (closure->parsed())
            return cmd_closure(common, cl, out, log);
        if (witness->parsed())
            return cmd_witness(common, wa, out);
        if (reduce->parsed())
            return cmd_reduce(common, ra, out);
        if (pinch->parsed())
            return cmd_pinch(common, pinch_witness, pinch_n, out);
        if (classify->parsed())
            return cmd_classify(common, out);
        if (sweep->parsed())
            return cmd_sweep(common, sweep_max, out);
        if (gapwitness->parsed())
            return cmd_gapwitness(common, gap_y, gap_s, out);
        if (params->parsed())
            return cmd_params(common, out);
    } catch (const Error &e) {
        log.error(e.what());
        err << "usage: " << app.help();
        return kExitBadInput;
    }
    return kExitBadInput;
}

}  // namespace qcx::cli
