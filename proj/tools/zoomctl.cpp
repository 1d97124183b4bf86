// zoomctl: run the counters from the command line, one result per output line.

#include "zoom/arithmetic.hpp"
#include "zoom/divisor_asymptotics.hpp"
#include "zoom/errors.hpp"
#include "zoom/lattice_zoom.hpp"
#include "zoom/parallel.hpp"
#include "zoom/pell.hpp"
#include "zoom/quadratic.hpp"
#include "zoom/y4.hpp"
#include "zoom/zoom_p1.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace zoom;
using json = nlohmann::ordered_json;

namespace {

struct Row {
    std::string command;
    json params = json::object();
    std::optional<u64> count;
    std::optional<long double> main_term;
    json details = json::object();
    double elapsed_ms = 0;
};

class Writer {
public:
    explicit Writer(std::string format) : format_(std::move(format)) {}

    void emit(const Row& r)
    {
        json count = r.count ? json(*r.count) : json(nullptr);
        json mt = r.main_term ? json(static_cast<double>(*r.main_term)) : json(nullptr);
        json ratio = (r.count && r.main_term && *r.main_term > 0) ? json(static_cast<double>(*r.count / *r.main_term)) : json(nullptr);
        if (format_ == "csv") {
            if (!header_) {
                std::cout << "command,parameters,count,main_term,ratio,elapsed_ms,details\n";
                header_ = true;
            }
            std::cout << r.command << ',' << quote(r.params.dump()) << ',' << plain(count) << ',' << plain(mt) << ','
                      << plain(ratio) << ',' << json(r.elapsed_ms).dump() << ',' << quote(r.details.dump()) << '\n';
        } else {
            json j;
            j["command"] = r.command;
            j["parameters"] = r.params;
            j["count"] = count;
            j["main_term"] = mt;
            j["ratio"] = ratio;
            j["elapsed_ms"] = r.elapsed_ms;
            if (!r.details.empty())
                j["details"] = r.details;
            std::cout << j.dump() << '\n';
        }
        std::cout.flush();
    }

private:
    static std::string plain(const json& v) { return v.is_null() ? "" : v.dump(); }
    static std::string quote(const std::string& s)
    {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"')
                out += '"';
            out += c;
        }
        return out + '"';
    }

    std::string format_;
    bool header_ = false;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count(); }
};

// "rational" -> none, "sqrt(N)" or "sqrt(b/a)" -> sqrt(b/a)
std::optional<QuadraticTarget> parse_target(const std::string& s)
{
    if (s == "rational")
        return std::nullopt;
    if (s.rfind("sqrt(", 0) != 0 || s.back() != ')')
        throw InvalidArgument("target must be 'rational' or 'sqrt(b/a)', got " + s);
    Rat q = parse_rational(s.substr(5, s.size() - 6));
    if (sgn(q) <= 0)
        throw InvalidArgument("target radicand must be positive");
    return QuadraticTarget(to_u64(q.get_den()), to_u64(q.get_num()));
}

QuadraticTarget need_target(const std::string& s)
{
    auto t = parse_target(s);
    if (!t)
        throw InvalidArgument("this command needs an irrational target sqrt(b/a)");
    return *t;
}

std::vector<i64> parse_ints(const std::string& s, size_t n, const char* what)
{
    std::vector<i64> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, s.find(':') != std::string::npos ? ':' : ',')) {
        Rat v = parse_rational(cur);
        if (v.get_den() != 1)
            throw InvalidArgument(std::string(what) + " needs integers");
        out.push_back(to_i64(v.get_num()));
    }
    if (out.size() != n)
        throw InvalidArgument(std::string(what) + " needs " + std::to_string(n) + " integers");
    return out;
}

Lattice2 parse_basis(const std::string& s)
{
    if (s.empty())
        return Lattice2::standard();
    auto v = parse_ints(s, 4, "--basis");
    return Lattice2({v[0], v[1]}, {v[2], v[3]});
}

Y4Point parse_point(const std::string& s)
{
    auto v = parse_ints(s, 4, "--point");
    return Y4Point(to_int(v[0]), to_int(v[1]), to_int(v[2]), to_int(v[3]));
}

json solution_json(const Solution& s)
{
    return json::array({s.first.get_str(), s.second.get_str()});
}

std::optional<long double> try_main(const std::function<long double()>& f)
{
    try {
        return f();
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"zoomctl: point counts in shrinking neighbourhoods"};
    app.require_subcommand(1);
    // global options may follow the subcommand too
    app.fallthrough();
    std::string format = "json";
    unsigned threads_opt = 0;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads_opt, "worker threads (ZOOM_THREADS overrides)");

    std::function<void(Writer&, unsigned)> action;

    // zoom-p1
    auto* p1 = app.add_subcommand("zoom-p1", "zoom on P^1 towards a rational or quadratic target");
    std::string p1_target = "rational", p1_eps, p1_eta = "0", p1_r = "1", p1_width = "1/1000", p1_seq = "none";
    u64 p1_B = 0;
    i64 p1_m = 0;
    size_t p1_n = 5;
    bool p1_decompose = false;
    p1->add_option("--target", p1_target, "rational | sqrt(b/a)");
    p1->add_option("--eps", p1_eps, "outer radius p/q");
    p1->add_option("--eta", p1_eta, "inner radius p/q");
    p1->add_option("--B", p1_B, "height bound");
    p1->add_option("--r", p1_r, "zoom factor p/q");
    p1->add_flag("--decompose", p1_decompose, "split the r = 1/2 count by a u^2 - b v^2");
    p1->add_option("--sequence", p1_seq, "none | track | avoid")->check(CLI::IsMember({"none", "track", "avoid"}));
    p1->add_option("--m", p1_m, "Pell value for the oscillation window and tracking");
    p1->add_option("--n", p1_n, "sequence length");
    p1->add_option("--width", p1_width, "relative half-width of the oscillation window");
    p1->callback([&] {
        action = [&](Writer& w, unsigned th) {
            Timer tm;
            auto target = parse_target(p1_target);
            Row row;
            row.command = "zoom-p1";
            if (p1_seq != "none") {
                if (!target)
                    throw InvalidArgument("sequences need a quadratic target");
                Rat eps, eta;
                if (!p1_eps.empty()) {
                    eps = parse_rational(p1_eps);
                    eta = parse_rational(p1_eta);
                } else {
                    if (p1_m == 0)
                        throw InvalidArgument("--sequence needs --m or an explicit --eps/--eta");
                    std::tie(eps, eta) = oscillation_window(*target, p1_m, parse_rational(p1_width));
                }
                auto Bs = p1_seq == "track" ? tracking_sequence(*target, eps, eta, p1_m, p1_n) : avoidance_sequence(*target, eps, eta, p1_n);
                for (u64 B : Bs) {
                    Timer t2;
                    Row r;
                    r.command = "zoom-p1";
                    r.params = {{"target", target->str()}, {"eps", to_string(eps)}, {"eta", to_string(eta)}, {"B", B}, {"r", "1/2"}, {"sequence", p1_seq}};
                    r.count = count_zoom_surd(*target, ZoomWindow(eps, eta, B, Ratio(1, 2)), th).count;
                    r.elapsed_ms = t2.ms();
                    w.emit(r);
                }
                return;
            }
            if (p1_eps.empty() || p1_B == 0)
                throw InvalidArgument("zoom-p1 needs --eps and --B");
            ZoomWindow win(parse_rational(p1_eps), parse_rational(p1_eta), p1_B, parse_ratio(p1_r));
            row.params = {{"target", target ? target->str() : "rational"}, {"eps", to_string(win.eps_outer)}, {"eta", to_string(win.eps_inner)}, {"B", p1_B}, {"r", win.r.str()}};
            if (!target) {
                ZoomCount c = count_zoom_rational(win, th);
                row.count = c.count;
                row.main_term = try_main([&] { return pagelot_main_term(win); });
            } else if (p1_decompose) {
                if (!(win.r == Ratio(1, 2)) || sgn(win.eps_inner) != 0)
                    throw InvalidArgument("--decompose needs r = 1/2 and eta = 0");
                auto bins = pell_window_decomposition(*target, win.eps_outer, p1_B);
                u64 total = 0;
                json jb = json::object();
                for (auto [m, c] : bins) {
                    total += c;
                    jb[std::to_string(m)] = c;
                }
                row.count = total;
                row.details["by_m"] = jb;
                row.details["critical_upper_bound"] = static_cast<double>(critical_upper_bound(*target, win.eps_outer));
            } else {
                ZoomCount c = count_zoom_surd(*target, win, th);
                row.count = c.count;
                row.main_term = try_main([&] { return subcritical_main_term(*target, win); });
            }
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });

    // pell
    auto* pell = app.add_subcommand("pell", "generalised Pell equations");
    pell->require_subcommand(1);
    u64 pl_D = 2, pl_bound = 1000000, pl_a = 1, pl_b = 2;
    i64 pl_m = 1;
    std::string pl_c = "1", pl_x, pl_y;
    unsigned pl_steps = 1;
    bool pl_list = false;
    auto* psolve = pell->add_subcommand("solve", "positive solutions of x^2 - D y^2 = m with y <= bound");
    auto* pfam = pell->add_subcommand("families", "orbits of the solutions under the unit group");
    for (auto* s : {psolve, pfam}) {
        s->add_option("--D", pl_D, "squarefree D")->required();
        s->add_option("--m", pl_m, "right-hand side")->required();
        s->add_option("--bound", pl_bound, "bound on y");
    }
    psolve->add_flag("--list", pl_list, "print the solutions");
    psolve->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Row row;
            row.command = "pell solve";
            row.params = {{"D", pl_D}, {"m", pl_m}, {"bound", pl_bound}};
            auto sols = solve_pell(pl_D, pl_m, pl_bound);
            row.count = sols.size();
            row.details["ideal_count"] = ideal_count(pl_D, pl_m);
            if (pl_list) {
                json js = json::array();
                for (const auto& s : sols)
                    js.push_back(solution_json(s));
                row.details["solutions"] = js;
            }
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    pfam->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Row row;
            row.command = "pell families";
            row.params = {{"D", pl_D}, {"m", pl_m}, {"bound", pl_bound}};
            auto fams = decompose_families(pl_D, pl_m, solve_pell(pl_D, pl_m, pl_bound));
            row.count = fams.size();
            json jf = json::array();
            for (const auto& f : fams)
                jf.push_back({{"base", f.base.str()}, {"gcd", f.gcd_xy.get_str()}, {"members", f.members.size()}});
            row.details["families"] = jf;
            row.details["generator"] = unit_star(pl_D).str();
            row.details["tau_bound"] = 3 * tau(factor(static_cast<u64>(pl_m < 0 ? -pl_m : pl_m)));
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    auto* padv = pell->add_subcommand("advance", "step a solution of a x^2 - b y^2 = c along its family");
    padv->add_option("--a", pl_a)->required();
    padv->add_option("--b", pl_b)->required();
    padv->add_option("--c", pl_c)->required();
    padv->add_option("--x", pl_x)->required();
    padv->add_option("--y", pl_y)->required();
    padv->add_option("--steps", pl_steps, "number of steps");
    padv->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Row row;
            row.command = "pell advance";
            Rat c = parse_rational(pl_c), x = parse_rational(pl_x), y = parse_rational(pl_y);
            if (c.get_den() != 1 || x.get_den() != 1 || y.get_den() != 1)
                throw InvalidArgument("pell advance needs integers");
            row.params = {{"a", pl_a}, {"b", pl_b}, {"c", pl_c}, {"x", pl_x}, {"y", pl_y}, {"steps", pl_steps}};
            QuadraticInteger g = generalized_generator(pl_a, pl_b);
            Solution s{x.get_num(), y.get_num()};
            json seq = json::array({solution_json(s)});
            for (unsigned k = 0; k < pl_steps; ++k) {
                s = advance_solution(pl_a, pl_b, c.get_num(), s, g);
                seq.push_back(solution_json(s));
            }
            row.count = pl_steps;
            row.details["generator"] = g.str();
            row.details["sequence"] = seq;
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });

    // lattice
    auto* lat = app.add_subcommand("lattice", "zoom restricted to a sublattice of Z^2");
    lat->require_subcommand(1);
    std::string lt_target = "sqrt(2)", lt_eps = "1", lt_K = "1", lt_r, lt_basis;
    u64 lt_B = 0, lt_trunc = 0;
    auto* lcount = lat->add_subcommand("count", "count lattice points in the zoom window");
    lcount->add_option("--target", lt_target, "sqrt(b/a)");
    lcount->add_option("--eps", lt_eps);
    lcount->add_option("--K", lt_K);
    lcount->add_option("--B", lt_B)->required();
    lcount->add_option("--r", lt_r)->required();
    lcount->add_option("--basis", lt_basis, "u1,v1,u2,v2 (default Z^2)");
    lcount->callback([&] {
        action = [&](Writer& w, unsigned th) {
            Timer tm;
            QuadraticTarget t = need_target(lt_target);
            Lattice2 L = parse_basis(lt_basis);
            Rat eps = parse_rational(lt_eps), K = parse_rational(lt_K);
            Ratio r = parse_ratio(lt_r);
            Row row;
            row.command = "lattice count";
            row.params = {{"target", t.str()}, {"eps", to_string(eps)}, {"K", to_string(K)}, {"B", lt_B}, {"r", r.str()},
                {"basis", json::array({L.e1.u, L.e1.v, L.e2.u, L.e2.v})}};
            row.count = count_lattice_zoom(t, eps, K, L, lt_B, r, th);
            row.main_term = try_main([&] { return lattice_zoom_main_term(t, eps, K, L, lt_B, r); });
            try {
                ConditionReport c = check_theorem_conditions(t, eps, K, L, lt_B, r);
                row.details["conditions"] = {{"cond0", c.cond0}, {"cond4", c.cond4}, {"cond5", c.cond5}};
            } catch (const Error&) {
            }
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    auto* ltheta = lat->add_subcommand("theta", "lattice density constant");
    ltheta->add_option("--basis", lt_basis, "u1,v1,u2,v2 (default Z^2)");
    ltheta->add_option("--target", lt_target, "sqrt(b/a), for the slope constant");
    ltheta->add_option("--truncate", lt_trunc, "also print the Mobius sum truncated at N");
    ltheta->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Lattice2 L = parse_basis(lt_basis);
            Row row;
            row.command = "lattice theta";
            row.params = {{"basis", json::array({L.e1.u, L.e1.v, L.e2.u, L.e2.v})}, {"target", lt_target}};
            ThetaLambda th = theta_lambda(L);
            row.details["theta_over_6_pi2"] = to_string(th.rational);
            row.details["theta"] = static_cast<double>(th.value);
            row.details["det"] = L.det();
            if (lt_trunc)
                row.details["theta_truncated"] = static_cast<double>(theta_truncated(L, lt_trunc));
            QuadraticTarget t = need_target(lt_target);
            ThetaAlpha ta = theta_alpha(reduced_basis(L), t);
            row.details["theta_alpha"] = static_cast<double>(ta.theta.value());
            row.details["slope_bracket"] = slope_bracket(ta, t);
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });

    // y4
    auto* y4 = app.add_subcommand("y4", "the blown-up surface Y4 (region z > w > 1 only, no symmetry factor)");
    y4->require_subcommand(1);
    std::string y_point, y_eps, y_eta = "0", y_r = "2", y_cut, y_region;
    u64 y_B = 0;
    bool y_oracle = false, y_breakdown = false;
    auto* yh = y4->add_subcommand("height", "height and distance of a point x:y:s:t");
    auto* yc = y4->add_subcommand("curve", "the nodal curve C_{a,b} through a point");
    for (auto* s : {yh, yc})
        s->add_option("--point", y_point, "x:y:s:t")->required();
    yh->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Y4Point P = parse_point(y_point);
            Row row;
            row.command = "y4 height";
            row.params = {{"point", P.str()}};
            row.details["height"] = height(P).get_str();
            row.details["distance"] = to_string(distance(P));
            row.details["thin_set"] = thin_set_member(P);
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    yc->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Y4Point P = parse_point(y_point);
            NodalCurve c = curve_of(P);
            Row row;
            row.command = "y4 curve";
            row.params = {{"point", P.str()}};
            row.details["a"] = c.a;
            row.details["b"] = c.b;
            row.details["square_pair"] = c.square_pair();
            row.details["approximation_constant"] = to_string(approx_constant_on_curve(c));
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    auto* ycount = y4->add_subcommand("count", "decomposition over nodal curves");
    auto* yor = y4->add_subcommand("oracle", "direct enumeration (B <= 100000)");
    for (auto* s : {ycount, yor}) {
        s->add_option("--eps", y_eps)->required();
        s->add_option("--eta", y_eta);
        s->add_option("--B", y_B)->required();
        s->add_option("--r", y_r);
    }
    ycount->add_option("--cutoff-eta", y_cut, "for r > 2: keep b <= B^(eta (1 - 2/r))");
    ycount->add_option("--region", y_region, "eps1,eps2,tau1,tau2 (replaces --eps/--eta)");
    ycount->add_flag("--check-oracle", y_oracle, "compare with the direct enumeration");
    ycount->add_flag("--breakdown", y_breakdown, "print counts per curve");
    ycount->callback([&] {
        action = [&](Writer& w, unsigned th) {
            Timer tm;
            Y4Query q;
            q.eps = parse_rational(y_eps);
            q.eta = parse_rational(y_eta);
            q.B = y_B;
            q.r = parse_ratio(y_r);
            q.threads = th;
            if (!y_cut.empty())
                q.cutoff_eta = parse_rational(y_cut);
            if (!y_region.empty()) {
                std::vector<Rat> v;
                std::stringstream ss(y_region);
                std::string cur;
                while (std::getline(ss, cur, ','))
                    v.push_back(parse_rational(cur));
                if (v.size() != 4)
                    throw InvalidArgument("--region needs eps1,eps2,tau1,tau2");
                q.region = RegionW{v[0], v[1], v[2], v[3]};
            }
            Y4Count c = count_zoom_y4(q);
            Row row;
            row.command = "y4 count";
            row.params = {{"eps", to_string(c.total.window.eps_outer)}, {"eta", to_string(c.total.window.eps_inner)}, {"B", y_B}, {"r", q.r.str()}};
            if (q.cutoff_eta)
                row.params["cutoff_eta"] = to_string(*q.cutoff_eta);
            if (q.region)
                row.params["region"] = y_region;
            row.count = c.total.count;
            if (c.total.main_term > 0)
                row.main_term = c.total.main_term;
            row.details["b_max"] = c.b_max;
            row.details["curves"] = c.curves;
            if (y_breakdown) {
                json jb = json::array();
                for (const auto& [ab, n] : c.per_curve)
                    jb.push_back({ab.first, ab.second, n});
                row.details["per_curve"] = jb;
            }
            if (y_oracle) {
                if (q.region)
                    throw InvalidArgument("--check-oracle does not support --region");
                ZoomCount o = brute_force_zoom_y4(q.eps, q.eta, q.B, q.r);
                row.details["oracle_count"] = o.count;
                row.details["oracle_equal"] = o.count == c.total.count;
            }
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    yor->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Rat eps = parse_rational(y_eps), eta = parse_rational(y_eta);
            Ratio r = parse_ratio(y_r);
            Row row;
            row.command = "y4 oracle";
            row.params = {{"eps", to_string(eps)}, {"eta", to_string(eta)}, {"B", y_B}, {"r", r.str()}};
            row.count = brute_force_zoom_y4(eps, eta, y_B, r).count;
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });

    // constants
    auto* cons = app.add_subcommand("constants", "Euler-product constants");
    cons->require_subcommand(1);
    std::uint32_t c_cut = 1000000;
    std::string c_r = "5/2", c_eta = "1/36";
    auto* cc1 = cons->add_subcommand("c1", "C1 truncated at a prime cutoff");
    auto* cc2 = cons->add_subcommand("c2", "C2(r, eta) truncated at a prime cutoff");
    cc1->add_option("--cutoff", c_cut);
    cc2->add_option("--cutoff", c_cut);
    cc2->add_option("--r", c_r);
    cc2->add_option("--eta", c_eta);
    cc1->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Row row;
            row.command = "constants c1";
            row.params = {{"cutoff", c_cut}};
            std::ostringstream os;
            os.precision(18);
            os << c1_constant(c_cut);
            row.details["value"] = os.str();
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });
    cc2->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            Ratio r = parse_ratio(c_r);
            Rat eta = parse_rational(c_eta);
            Row row;
            row.command = "constants c2";
            row.params = {{"r", r.str()}, {"eta", to_string(eta)}, {"cutoff", c_cut}};
            std::ostringstream os;
            os.precision(18);
            os << c2_constant(r, eta, c_cut);
            row.details["value"] = os.str();
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });

    // discrepancy
    auto* disc = app.add_subcommand("discrepancy", "star discrepancy of k*alpha mod 1");
    std::string d_target = "sqrt(2)";
    u64 d_N = 1000;
    disc->add_option("--target", d_target, "sqrt(b/a)");
    disc->add_option("--N", d_N)->required();
    disc->callback([&] {
        action = [&](Writer& w, unsigned) {
            Timer tm;
            QuadraticTarget t = need_target(d_target);
            Enclosure e = empirical_discrepancy(t, d_N);
            Row row;
            row.command = "discrepancy";
            row.params = {{"target", t.str()}, {"N", d_N}};
            row.details["lo"] = to_string(e.lo);
            row.details["hi"] = to_string(e.hi);
            row.details["approx"] = static_cast<double>(e.approx());
            row.details["upper_bound"] = static_cast<double>(discrepancy_upper_bound(d_N, partial_quotient_bound(t)));
            row.elapsed_ms = tm.ms();
            w.emit(row);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (!action)
        return 0;
    try {
        Writer w(format);
        action(w, resolve_threads(threads_opt));
    } catch (const TooLarge& e) {
        std::cerr << "zoomctl: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "zoomctl: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
