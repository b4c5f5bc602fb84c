#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "extalg/basis.hpp"
#include "extalg/parse.hpp"
#include "extalg/relations.hpp"
#include "extalg/resolution.hpp"
#include "extalg/rewrite.hpp"
#include "extalg/series.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace extalg::cli {

using nlohmann::json;

/// Exit-code contract: 0 success, 2 validation/usage error, 3 a mathematical
/// check failed (with a structured JSON report on stderr).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMathFailure = 3;

namespace detail {

inline json failures_json(const std::string& check, const CheckReport& report) {
    json fails = json::array();
    for (const auto& f : report.failures) fails.push_back({{"subject", f.subject}, {"detail", f.detail}});
    return {{"schema", 1}, {"check", check}, {"checked", report.checked}, {"failures", fails}};
}

inline json word_json(const GroupCtx& ctx, const Word& w) {
    json arr = json::array();
    for (Atom a : w) arr.push_back(format_atom(ctx, a));
    return arr;
}

struct CommonOpts {
    int p = 3;
    int rank = 1;
    uint64_t fuel = kDefaultFuel;
    uint64_t seed = 0;
    std::string format = "text";
    bool guard_override = false;
};

inline void add_pr(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "odd prime p")->required();
    cmd->add_option("--rank", o.rank, "rank r of (C_p)^r")->required();
}

} // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"normal forms, basis enumeration, Poincare series and an independent "
                 "Ext-dimension oracle for the self-extension algebra of cohomological "
                 "Mackey functors over (C_p)^r"};
    app.require_subcommand(1);
    detail::CommonOpts o;

    auto* lines_cmd = app.add_subcommand("lines", "list the order-p subgroups (lines)");
    detail::add_pr(lines_cmd, o);
    lines_cmd->add_option("--format", o.format, "text|json");

    auto* basis_cmd = app.add_subcommand("basis", "enumerate the admissible-word basis");
    detail::add_pr(basis_cmd, o);
    int degree = 0;
    bool count_only = false;
    basis_cmd->add_option("--degree", degree, "homogeneous degree n")->required();
    basis_cmd->add_flag("--count-only", count_only, "print only the cardinality");
    basis_cmd->add_option("--format", o.format, "text|json");

    auto* count_cmd = app.add_subcommand("count", "count the admissible-word basis");
    detail::add_pr(count_cmd, o);
    count_cmd->add_option("--degree", degree, "homogeneous degree n")->required();

    auto* series_cmd = app.add_subcommand("series", "expand the Poincare series");
    detail::add_pr(series_cmd, o);
    int upto = 0;
    bool check_rec = false;
    series_cmd->add_option("--upto", upto, "expand coefficients c_0..c_N")->required();
    series_cmd->add_flag("--check-recurrence", check_rec, "verify the rank-lowering recurrence");
    series_cmd->add_option("--format", o.format, "text|csv|json");

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce an element to its normal form");
    detail::add_pr(reduce_cmd, o);
    std::string elem_text, elem_text2;
    bool trace = false;
    reduce_cmd->add_option("element", elem_text, "element in the t/g grammar")->required();
    reduce_cmd->add_option("--fuel", o.fuel, "rewrite step budget per word");
    reduce_cmd->add_flag("--trace", trace, "log each rewrite step to stderr");
    reduce_cmd->add_option("--format", o.format, "text|json");

    auto* mul_cmd = app.add_subcommand("mul", "multiply two elements (concatenate and reduce)");
    detail::add_pr(mul_cmd, o);
    mul_cmd->add_option("lhs", elem_text, "left factor")->required();
    mul_cmd->add_option("rhs", elem_text2, "right factor")->required();
    mul_cmd->add_option("--fuel", o.fuel, "rewrite step budget per word");
    mul_cmd->add_option("--format", o.format, "text|json");

    auto* check_cmd = app.add_subcommand("check", "relation soundness and strategy independence");
    detail::add_pr(check_cmd, o);
    size_t samples = 200;
    int max_degree = 6;
    check_cmd->add_option("--samples", samples, "random words per strategy comparison");
    check_cmd->add_option("--max-degree", max_degree, "degree bound for sampled words");
    check_cmd->add_option("--seed", o.seed, "sample seed");
    check_cmd->add_option("--fuel", o.fuel, "rewrite step budget per word");

    auto* oracle_cmd = app.add_subcommand("oracle", "Ext dimensions from minimal resolutions");
    detail::add_pr(oracle_cmd, o);
    bool audit = false;
    oracle_cmd->add_option("--upto", upto, "compute dim Ext^n for n <= N")->required();
    oracle_cmd->add_flag("--guard-override", o.guard_override, "lift the size guard");
    oracle_cmd->add_flag("--audit", audit, "also print algebra and radical dimensions");
    oracle_cmd->add_option("--format", o.format, "text|csv|json");

    auto* verify_cmd = app.add_subcommand("verify-all", "basis/series/oracle triple agreement");
    detail::add_pr(verify_cmd, o);
    verify_cmd->add_option("--upto", upto, "degree bound N")->required();
    verify_cmd->add_option("--seed", o.seed, "sample seed");
    verify_cmd->add_option("--fuel", o.fuel, "rewrite step budget per word");
    verify_cmd->add_flag("--guard-override", o.guard_override, "lift the oracle size guard");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        GroupCtx ctx = make_context(o.p, o.rank);

        if (*lines_cmd) {
            if (o.format == "json") {
                json arr = json::array();
                for (const Line& x : ctx.lines())
                    arr.push_back({{"rep", x.rep}, {"position", x.position}});
                out << json{{"schema", 1}, {"p", o.p}, {"r", o.rank}, {"lines", arr}}.dump() << "\n";
            } else {
                for (const Line& x : ctx.lines())
                    out << format_vector(x.rep) << " position=" << x.position << "\n";
            }
            return kExitOk;
        }

        if (*count_cmd) {
            out << count_basis(ctx, degree).get_str() << "\n";
            return kExitOk;
        }

        if (*basis_cmd) {
            if (count_only) {
                out << count_basis(ctx, degree).get_str() << "\n";
                return kExitOk;
            }
            auto words = admissible_basis(ctx, degree);
            if (o.format == "json") {
                json arr = json::array();
                for (const Word& w : words) arr.push_back(detail::word_json(ctx, w));
                out << json{{"schema", 1}, {"p", o.p}, {"r", o.rank}, {"degree", degree},
                            {"count", words.size()}, {"words", arr}}
                           .dump()
                    << "\n";
            } else {
                for (const Word& w : words) out << format_word(ctx, w) << "\n";
            }
            return kExitOk;
        }

        if (*series_cmd) {
            auto coeffs = poincare_coeffs(ctx, upto);
            if (o.format == "json") {
                json arr = json::array();
                for (const auto& c : coeffs.coeffs) arr.push_back(c.get_str());
                json j{{"schema", 1}, {"p", o.p}, {"r", o.rank}, {"coeffs", arr}};
                if (check_rec && o.rank >= 2) {
                    auto rep = recurrence_check(ctx, upto);
                    j["recurrence_ok"] = rep.ok;
                    if (!rep.ok) {
                        err << json{{"schema", 1}, {"check", "recurrence"}, {"detail", rep.detail}}.dump()
                            << "\n";
                        out << j.dump() << "\n";
                        return kExitMathFailure;
                    }
                }
                out << j.dump() << "\n";
            } else {
                for (size_t n = 0; n < coeffs.size(); ++n)
                    out << n << "," << coeffs[n].get_str() << "\n";
                if (check_rec && o.rank >= 2) {
                    auto rep = recurrence_check(ctx, upto);
                    if (!rep.ok) {
                        err << json{{"schema", 1}, {"check", "recurrence"}, {"detail", rep.detail}}.dump()
                            << "\n";
                        return kExitMathFailure;
                    }
                    out << "recurrence ok for n <= " << upto << "\n";
                }
            }
            return kExitOk;
        }

        if (*reduce_cmd || *mul_cmd) {
            Rewriter rw(ctx);
            if (trace)
                rw.set_trace([&err](ForbiddenTag tag, size_t site, size_t terms) {
                    err << to_string(tag) << " @" << site << " terms=" << terms << "\n";
                });
            Element result(ctx);
            if (*reduce_cmd) {
                result = rw.normal_form(parse_element(ctx, elem_text), o.fuel);
            } else {
                result = rw.multiply(parse_element(ctx, elem_text), parse_element(ctx, elem_text2),
                                     o.fuel);
            }
            if (o.format == "json") {
                json j = element_to_json(result);
                j["schema"] = 1;
                out << j.dump() << "\n";
            } else {
                out << format_element(result) << "\n";
            }
            return kExitOk;
        }

        if (*check_cmd) {
            auto relations = check_relations(ctx, o.fuel);
            out << "relations: " << relations.checked << " instances, "
                << (relations.ok ? "all reduce to zero" : "FAILED") << "\n";
            auto confluence = check_confluence(ctx, samples, max_degree, o.seed, o.fuel);
            out << "confluence: " << confluence.checked << " sampled words, "
                << (confluence.ok ? "strategy independent" : "FAILED") << "\n";
            if (!relations.ok || !confluence.ok) {
                err << detail::failures_json(relations.ok ? "confluence" : "relations",
                                             relations.ok ? confluence : relations)
                           .dump()
                    << "\n";
                return kExitMathFailure;
            }
            return kExitOk;
        }

        if (*oracle_cmd) {
            check_ext_guard(ctx, upto, o.guard_override);
            YoshidaAlgebra A(ctx, o.guard_override);
            RadicalInfo rad = radical(A);
            Resolution res = minimal_resolution(A, upto, rad);
            std::vector<int> dims;
            for (const auto& st : res.stages) dims.push_back(st.mult[A.trivial_object()]);
            if (o.format == "json") {
                json j{{"schema", 1}, {"p", o.p}, {"r", o.rank}, {"ext_dims", dims}};
                if (audit) {
                    j["algebra_dim"] = A.dim();
                    j["objects"] = A.num_objects();
                    j["radical_dim"] = rad.basis.size();
                    j["radical_nilpotency"] = rad.nilpotency;
                }
                out << j.dump() << "\n";
            } else {
                for (size_t n = 0; n < dims.size(); ++n) out << n << "," << dims[n] << "\n";
                if (audit) {
                    out << "objects: " << A.num_objects() << "\n";
                    out << "algebra dimension: " << A.dim() << "\n";
                    out << "hom block dimensions:\n";
                    for (int d = 0; d < A.num_objects(); ++d) {
                        out << " ";
                        for (int s = 0; s < A.num_objects(); ++s) out << " " << A.block(d, s).dim();
                        out << "\n";
                    }
                    out << "radical dimension: " << rad.basis.size()
                        << " (nilpotency " << rad.nilpotency << ")\n";
                }
            }
            return kExitOk;
        }

        if (*verify_cmd) {
            bool all_ok = true;
            json report = json::array();

            auto coeffs = poincare_coeffs(ctx, upto);
            bool series_ok = true;
            for (int n = 0; n <= upto; ++n)
                if (coeffs[n] != count_basis(ctx, n)) series_ok = false;
            out << "basis-series agreement (n <= " << upto << "): "
                << (series_ok ? "ok" : "FAILED") << "\n";
            if (!series_ok) report.push_back({{"check", "basis-series"}, {"detail", "coefficient mismatch"}});
            all_ok &= series_ok;

            auto relations = check_relations(ctx, o.fuel);
            out << "relation soundness (" << relations.checked << " instances): "
                << (relations.ok ? "ok" : "FAILED") << "\n";
            if (!relations.ok)
                for (const auto& f : relations.failures)
                    report.push_back({{"check", "relations"}, {"subject", f.subject}, {"detail", f.detail}});
            all_ok &= relations.ok;

            auto confluence = check_confluence(ctx, 200, std::min(upto + 2, 8), o.seed, o.fuel);
            out << "strategy independence (" << confluence.checked << " words): "
                << (confluence.ok ? "ok" : "FAILED") << "\n";
            if (!confluence.ok)
                for (const auto& f : confluence.failures)
                    report.push_back({{"check", "confluence"}, {"subject", f.subject}, {"detail", f.detail}});
            all_ok &= confluence.ok;

            int oracle_cap = o.rank == 1 ? 8 : (o.rank == 2 ? 5 : 0);
            int oracle_upto = o.guard_override ? upto : std::min(upto, oracle_cap);
            bool oracle_feasible = o.guard_override || (o.rank <= 2 && oracle_upto >= 0);
            if (oracle_feasible) {
                try {
                    auto dims = ext_dims(ctx, oracle_upto, o.guard_override);
                    bool oracle_ok = true;
                    for (int n = 0; n <= oracle_upto; ++n)
                        if (mpz_class(dims[n]) != count_basis(ctx, n)) oracle_ok = false;
                    out << "oracle agreement (n <= " << oracle_upto << "): "
                        << (oracle_ok ? "ok" : "FAILED") << "\n";
                    if (!oracle_ok)
                        report.push_back({{"check", "oracle"}, {"detail", "dimension mismatch"}});
                    all_ok &= oracle_ok;
                } catch (const SizeGuard& e) {
                    out << "oracle agreement: skipped (" << e.what() << ")\n";
                }
            } else {
                out << "oracle agreement: skipped (size guard; use --guard-override)\n";
            }

            if (!all_ok) {
                err << json{{"schema", 1}, {"check", "verify-all"}, {"failures", report}}.dump() << "\n";
                return kExitMathFailure;
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedPrime& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidRank& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const SizeGuard& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const FuelExhausted& e) {
        err << json{{"schema", 1}, {"check", "fuel"}, {"detail", e.what()}}.dump() << "\n";
        return kExitMathFailure;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

inline int dispatch_argv(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, out, err);
}

} // namespace extalg::cli
