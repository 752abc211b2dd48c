#include <qinterp/serialize.hpp>

namespace qinterp {

nlohmann::json rational_json(const Rational& r) {
    return {{"exact", to_fraction_string(r)}, {"value", to_double(r)}};
}

nlohmann::json params_json(const ProblemParams& params) {
    return {{"p", params.field.characteristic()},
            {"r", params.field.degree()},
            {"q", params.q()},
            {"d", params.d},
            {"k", params.k},
            {"n", params.n}};
}

nlohmann::json census_json(const RangeCensus& census) {
    nlohmann::json out;
    out["params"] = params_json(census.params);
    out["cells"] = census.cells();
    for (Scope s : {Scope::all, Scope::good}) {
        const std::string tag(to_string(s));
        const auto moments = moment_stats(census, s);
        out["range_size_" + tag] = census.range_size(s);
        out["pair_count_" + tag] = census.pair_count(s);
        out["success_probability_" + tag] = rational_json(success_probability(census, s));
        out["mean_" + tag] = rational_json(moments.mean);
        out["variance_" + tag] = rational_json(moments.variance);
        auto hist = nlohmann::json::array();
        for (auto [count, mult] : census.histogram(s)) hist.push_back({count, mult});
        out["histogram_" + tag] = std::move(hist);
    }
    out["wall_seconds"] = census.wall_seconds;
    return out;
}

nlohmann::json state_json(const StateVector& state) {
    auto amps = nlohmann::json::array();
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        const Amplitude a = state[i];
        if (std::abs(a) > 1e-15) amps.push_back({i, a.real(), a.imag()});
    }
    return {{"q", state.field().order()}, {"registers", state.registers()}, {"amplitudes", std::move(amps)}};
}

}  // namespace qinterp
