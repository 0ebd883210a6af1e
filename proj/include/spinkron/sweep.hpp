#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "spinkron/complex_matrix.hpp"
#include "spinkron/hamiltonian.hpp"
#include "spinkron/spectral.hpp"

namespace spinkron {

/// Schema or content problem in a sweep-spec document. The message always
/// names the offending key (with its path where nested).
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModelKind { breit_rabi, general_tensor };

struct FieldGrid {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;

    std::size_t points() const {
        const double raw = (stop - start) / step;
        return static_cast<std::size_t>(std::floor(raw + 1e-9 * std::max(1.0, std::abs(raw)))) + 1;
    }
    double at(std::size_t k) const { return start + static_cast<double>(k) * step; }
};

/// A fully validated sweep request. For breit_rabi the three scalar
/// coefficients below are used; for general_tensor the tensor block plus
/// the unit field direction are.
struct SweepSpec {
    ModelKind model = ModelKind::breit_rabi;
    SpinQuantum nucleus{1};
    SpinQuantum electron{1};

    double hyperfine = 0.0;
    double electron_zeeman = 0.0;
    double nuclear_zeeman = 0.0;

    TensorParams tensor{};   // tensor.field is unused; direction below
    Vec3 field_dir{0.0, 0.0, 1.0};

    FieldGrid grid{};
    std::string output_path;
    double crossing_tol = 0.0;  // <= 0: default to 1e-9 * spectral scale
};

struct CrossingEvent {
    enum class Kind { crossing, avoided };
    Kind kind = Kind::crossing;
    std::size_t lower_level = 0;  // ascending-sort indices, upper = lower + 1
    std::size_t upper_level = 1;
    double field_at_extremum = 0.0;
    double gap_at_extremum = 0.0;
};

struct SweepResult {
    std::vector<double> field_values;          // strictly increasing
    std::vector<std::vector<double>> levels;   // per field value, ascending
    std::vector<CrossingEvent> events;
};

// ---------------------------------------------------------------------------
// spec parsing

namespace detail {

using nlohmann::json;

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw SpecError("unknown key " + quoted(item.key()) +
                            (where.empty() ? "" : " in " + quoted(where)));
    }
}

inline const json& require_key(const json& obj, const std::string& key,
                               const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SpecError("missing required key " +
                        quoted(where.empty() ? key : where + "." + key));
    return *it;
}

inline double finite_number(const json& v, const std::string& path) {
    if (!v.is_number())
        throw SpecError(quoted(path) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw SpecError(quoted(path) + ": non-finite number");
    return d;
}

inline int nonneg_int(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        throw SpecError(quoted(path) + ": expected an integer");
    const long long i = v.get<long long>();
    if (i < 0)
        throw SpecError(quoted(path) + ": must be >= 0");
    return static_cast<int>(i);
}

inline Mat3 mat3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3)
        throw SpecError(quoted(path) + ": expected a 3x3 array");
    Mat3 m{};
    for (int r = 0; r < 3; ++r) {
        const json& row = v[r];
        if (!row.is_array() || row.size() != 3)
            throw SpecError(quoted(path) + ": expected a 3x3 array");
        for (int c = 0; c < 3; ++c)
            m[r][c] = finite_number(row[c], path + "[" + std::to_string(r) + "][" +
                                                std::to_string(c) + "]");
    }
    return m;
}

inline Vec3 vec3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3)
        throw SpecError(quoted(path) + ": expected an array of 3 numbers");
    Vec3 out{};
    for (int i = 0; i < 3; ++i)
        out[i] = finite_number(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

}  // namespace detail

/// Parse and validate a sweep-spec JSON document. Unknown keys are
/// rejected; every diagnostic names the offending key.
inline SweepSpec parse_spec(const std::string& text) {
    using detail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        // covers malformed documents and number overflow (1e99999 -> inf)
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw SpecError("spec document must be a JSON object");

    detail::reject_unknown_keys(root,
                                {"model", "two_j_i", "two_j_s", "a_hf", "a_e", "b_n", "tensor",
                                 "field", "output", "crossing_tol"},
                                "");

    SweepSpec spec;

    const std::string model = [&] {
        const json& m = detail::require_key(root, "model", "");
        if (!m.is_string())
            throw SpecError("\"model\": expected a string");
        return m.get<std::string>();
    }();
    if (model == "breit_rabi")
        spec.model = ModelKind::breit_rabi;
    else if (model == "general_tensor")
        spec.model = ModelKind::general_tensor;
    else
        throw SpecError("\"model\": must be \"breit_rabi\" or \"general_tensor\"");

    spec.nucleus = SpinQuantum{detail::nonneg_int(detail::require_key(root, "two_j_i", ""),
                                                  "two_j_i")};
    spec.electron = SpinQuantum{root.contains("two_j_s")
                                    ? detail::nonneg_int(root["two_j_s"], "two_j_s")
                                    : 1};

    if (spec.model == ModelKind::breit_rabi) {
        if (root.contains("tensor"))
            throw SpecError("\"tensor\": not valid for model \"breit_rabi\"");
        if (spec.electron.two_j() != 1)
            throw SpecError("\"two_j_s\": must be 1 for model \"breit_rabi\"");
        spec.hyperfine = detail::finite_number(detail::require_key(root, "a_hf", ""), "a_hf");
        spec.electron_zeeman =
            detail::finite_number(detail::require_key(root, "a_e", ""), "a_e");
        spec.nuclear_zeeman = detail::finite_number(detail::require_key(root, "b_n", ""), "b_n");
    } else {
        for (const char* k : {"a_hf", "a_e", "b_n"})
            if (root.contains(k))
                throw SpecError(detail::quoted(k) + ": not valid for model \"general_tensor\"");
        const json& t = detail::require_key(root, "tensor", "");
        if (!t.is_object())
            throw SpecError("\"tensor\": expected an object");
        detail::reject_unknown_keys(t, {"beta_e", "beta_n", "g", "g_n", "a", "field_dir"},
                                    "tensor");
        spec.tensor.beta_e =
            detail::finite_number(detail::require_key(t, "beta_e", "tensor"), "tensor.beta_e");
        spec.tensor.beta_n =
            detail::finite_number(detail::require_key(t, "beta_n", "tensor"), "tensor.beta_n");
        spec.tensor.g_electron = detail::mat3(detail::require_key(t, "g", "tensor"), "tensor.g");
        spec.tensor.g_nuclear =
            detail::mat3(detail::require_key(t, "g_n", "tensor"), "tensor.g_n");
        spec.tensor.coupling = detail::mat3(detail::require_key(t, "a", "tensor"), "tensor.a");
        const Vec3 dir =
            detail::vec3(detail::require_key(t, "field_dir", "tensor"), "tensor.field_dir");
        const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
        if (norm == 0.0)
            throw SpecError("\"tensor.field_dir\": must be a nonzero vector");
        spec.field_dir = {dir[0] / norm, dir[1] / norm, dir[2] / norm};
    }

    const detail::json& f = detail::require_key(root, "field", "");
    if (!f.is_object())
        throw SpecError("\"field\": expected an object");
    detail::reject_unknown_keys(f, {"start", "stop", "step"}, "field");
    spec.grid.start =
        detail::finite_number(detail::require_key(f, "start", "field"), "field.start");
    spec.grid.stop = detail::finite_number(detail::require_key(f, "stop", "field"), "field.stop");
    spec.grid.step = detail::finite_number(detail::require_key(f, "step", "field"), "field.step");
    if (spec.grid.step <= 0.0)
        throw SpecError("\"field.step\": must be > 0");
    if (spec.grid.stop <= spec.grid.start)
        throw SpecError("\"field.stop\": must be > field.start");
    if (spec.grid.points() < 2)
        throw SpecError("\"field\": grid must contain at least 2 points");

    const detail::json& out = detail::require_key(root, "output", "");
    if (!out.is_string() || out.get<std::string>().empty())
        throw SpecError("\"output\": expected a nonempty string");
    spec.output_path = out.get<std::string>();

    if (root.contains("crossing_tol")) {
        spec.crossing_tol = detail::finite_number(root["crossing_tol"], "crossing_tol");
        if (spec.crossing_tol < 0.0)
            throw SpecError("\"crossing_tol\": must be >= 0");
    }
    return spec;
}

/// Hamiltonian of the spec's model at one field intensity.
inline ComplexMatrix build_at(const SweepSpec& spec, double field) {
    if (spec.model == ModelKind::breit_rabi) {
        return build_breit_rabi(BreitRabiParams{spec.nucleus, spec.hyperfine, field,
                                                spec.electron_zeeman, spec.nuclear_zeeman});
    }
    TensorParams t = spec.tensor;
    t.field = {field * spec.field_dir[0], field * spec.field_dir[1], field * spec.field_dir[2]};
    return build_general(spec.nucleus, spec.electron, tensor_to_coefficients(t));
}

// ---------------------------------------------------------------------------
// sweep engine

/// Diagonalize H(B) over the whole grid. Grid points are independent work
/// items; `threads` > 1 splits them across that many workers, but rows are
/// merged in grid order, so the result is identical to a serial run.
/// Eigensolver failures are reported with the offending field value; with
/// several failing points the one at the lowest field wins, deterministically.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0) {
    const std::size_t npts = spec.grid.points();
    SweepResult result;
    result.field_values.resize(npts);
    result.levels.resize(npts);

    if (threads == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = npts >= 256 ? std::max(1u, hw) : 1u;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, npts));

    struct Failure {
        std::size_t index;
        std::string message;
    };
    std::vector<std::optional<Failure>> failures(threads);

    auto work = [&](unsigned worker) {
        for (std::size_t k = worker; k < npts; k += threads) {
            const double b = spec.grid.at(k);
            try {
                const ComplexMatrix h = build_at(spec, b);
                Spectrum s = eigen_hermitian(h, 1e-10, false);
                result.field_values[k] = b;
                result.levels[k] = std::move(s.eigenvalues);
            } catch (const std::exception& e) {
                auto& slot = failures[worker];
                if (!slot || k < slot->index)
                    slot = Failure{k, std::string(e.what()) + " (at field B=" +
                                          std::to_string(b) + ")"};
                return;
            }
        }
    };

    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }

    const Failure* first = nullptr;
    for (const auto& f : failures)
        if (f && (!first || f->index < first->index))
            first = &*f;
    if (first)
        throw ConvergenceError("run_sweep: " + first->message);
    return result;
}

// ---------------------------------------------------------------------------
// event detection

/// Scan every adjacent-in-sort level pair for isolated interior local
/// minima of the gap. The extremum is refined by a parabola through the
/// three bracketing grid points, fitted to the SQUARED gap -- smooth both
/// at avoided crossings and at true crossings (where the gap itself has a
/// |.|-shaped kink), so the refined location converges as O(step^2).
/// Classification: crossing if the refined gap is <= crossing_tol (or below
/// the fit's own numerical resolution), else avoided. A pair that is
/// degenerate over a whole interval has no isolated minimum and produces no
/// event. crossing_tol <= 0 selects the default 1e-9 * (largest level
/// magnitude in the sweep).
inline std::vector<CrossingEvent> detect_events(const SweepResult& r, double crossing_tol = 0.0) {
    const std::size_t npts = r.field_values.size();
    if (npts < 3)
        throw std::invalid_argument("detect_events: need at least 3 field points");
    const std::size_t nlev = r.levels.empty() ? 0 : r.levels.front().size();

    if (crossing_tol <= 0.0) {
        double scale = 0.0;
        for (const auto& row : r.levels)
            for (double v : row)
                scale = std::max(scale, std::abs(v));
        crossing_tol = 1e-9 * scale;
    }

    std::vector<CrossingEvent> events;
    std::vector<double> gap(npts);
    for (std::size_t i = 0; i + 1 < nlev; ++i) {
        for (std::size_t k = 0; k < npts; ++k)
            gap[k] = r.levels[k][i + 1] - r.levels[k][i];

        for (std::size_t k = 1; k + 1 < npts; ++k) {
            if (!(gap[k] < gap[k - 1] && gap[k] < gap[k + 1]))
                continue;  // not an isolated interior minimum

            // Parabola through (B_{k-1},q-), (B_k,q0), (B_{k+1},q+) of the
            // squared gap; uniform spacing h.
            const double h = r.field_values[k] - r.field_values[k - 1];
            const double qm = gap[k - 1] * gap[k - 1];
            const double q0 = gap[k] * gap[k];
            const double qp = gap[k + 1] * gap[k + 1];
            const double denom = qp - 2.0 * q0 + qm;

            double field = r.field_values[k];
            double qmin = q0;
            if (denom > 0.0) {
                double delta = 0.5 * h * (qm - qp) / denom;
                delta = std::clamp(delta, -h, h);
                field += delta;
                qmin = q0 - (qp - qm) * (qp - qm) / (8.0 * denom);
            }
            const double gmin = std::sqrt(std::max(0.0, qmin));

            // The fit cannot resolve a minimum below ~sqrt(eps) times the
            // neighboring gap; anything in that band is a crossing at
            // working precision even under a stricter user tolerance.
            const double fit_floor = 6e-8 * std::max(gap[k - 1], gap[k + 1]);

            CrossingEvent ev;
            ev.kind = gmin <= std::max(crossing_tol, fit_floor)
                          ? CrossingEvent::Kind::crossing
                          : CrossingEvent::Kind::avoided;
            ev.lower_level = i;
            ev.upper_level = i + 1;
            ev.field_at_extremum = field;
            ev.gap_at_extremum = gmin;
            events.push_back(ev);
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const CrossingEvent& a, const CrossingEvent& b) {
                         return a.field_at_extremum < b.field_at_extremum;
                     });
    return events;
}

// ---------------------------------------------------------------------------
// CSV output

namespace detail {

/// 12 significant digits; the one formatting routine both CSV writers use,
/// so identical runs are byte-identical.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

/// Path of the events table that accompanies a levels table:
/// "levels.csv" -> "levels.events.csv".
inline std::string events_path_for(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    const std::size_t slash = path.find_last_of("/\\");
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return path.substr(0, dot) + ".events" + path.substr(dot);
    return path + ".events.csv";
}

/// Write the level table (`B,E1,...,En`) to `path` and the event table
/// (`kind,level_i,level_j,B,gap`) to the sibling events path. Level indices
/// in the event table are 1-based, matching the E1..En column names.
inline void write_csv(const SweepResult& r, const std::string& path) {
    const std::size_t nlev = r.levels.empty() ? 0 : r.levels.front().size();

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_csv: cannot open " + path);
    out << "B";
    for (std::size_t i = 1; i <= nlev; ++i)
        out << ",E" << i;
    out << "\n";
    for (std::size_t k = 0; k < r.field_values.size(); ++k) {
        out << detail::format_number(r.field_values[k]);
        for (double v : r.levels[k])
            out << "," << detail::format_number(v);
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("write_csv: write failed for " + path);
    out.close();

    const std::string epath = events_path_for(path);
    std::ofstream ev(epath, std::ios::binary);
    if (!ev)
        throw std::runtime_error("write_csv: cannot open " + epath);
    ev << "kind,level_i,level_j,B,gap\n";
    for (const CrossingEvent& e : r.events) {
        ev << (e.kind == CrossingEvent::Kind::crossing ? "crossing" : "avoided") << ","
           << (e.lower_level + 1) << "," << (e.upper_level + 1) << ","
           << detail::format_number(e.field_at_extremum) << ","
           << detail::format_number(e.gap_at_extremum) << "\n";
    }
    if (!ev)
        throw std::runtime_error("write_csv: write failed for " + epath);
}

}  // namespace spinkron
