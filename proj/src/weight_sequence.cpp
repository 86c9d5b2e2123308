#include "ultra/weight_sequence.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ultra::seqcore {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

double parse_number(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) reject(ctx + ": trailing characters in '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        reject(ctx + ": not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
        reject(ctx + ": out of range: '" + s + "'");
    }
}

}  // namespace

WeightSequence make_sequence(std::string name, std::vector<double> logM) {
    if (logM.size() < 9) reject("weight sequence '" + name + "': K >= 8 required");
    if (logM[0] != 0.0) reject("weight sequence '" + name + "': logM[0] must be 0 (M_0 = 1)");
    if (logM[1] < 0.0) reject("weight sequence '" + name + "': logM[1] >= 0 required (M_1 >= 1)");
    for (double v : logM)
        if (!std::isfinite(v)) reject("weight sequence '" + name + "': non-finite entry");
    return WeightSequence{std::move(name), std::move(logM)};
}

WeightSequence truncate(const WeightSequence& M, int new_K) {
    if (new_K > M.K()) reject("truncate: new K exceeds stored window");
    std::vector<double> v(M.logM.begin(), M.logM.begin() + new_K + 1);
    return make_sequence(M.name, std::move(v));
}

DerivedViews derived(const WeightSequence& M) {
    const int K = M.K();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    DerivedViews d;
    d.log_m.resize(K + 1);
    d.log_mu.assign(K + 1, nan);
    d.log_lambda.assign(K + 1, nan);
    d.log_theta.assign(K + 1, nan);
    for (int k = 0; k <= K; ++k) d.log_m[k] = M.logM[k] - std::lgamma(k + 1.0);
    for (int k = 1; k <= K; ++k) {
        d.log_mu[k] = M.logM[k] - M.logM[k - 1];
        d.log_lambda[k] = M.logM[k] / k;
        d.log_theta[k] = std::log(static_cast<double>(k)) + d.log_m[k] / k;
    }
    return d;
}

WeightSequence build_family(const Family& f, int K) {
    if (K < 8) reject("build_family: K >= 8 required");
    std::vector<double> logM(K + 1, 0.0);
    std::string name;

    if (const auto* g = std::get_if<Gevrey>(&f)) {
        if (!(g->s >= 1.0)) reject("gevrey: s >= 1 required");
        for (int k = 0; k <= K; ++k) logM[k] = g->s * std::lgamma(k + 1.0);
    } else if (const auto* b = std::get_if<Bridge>(&f)) {
        if (!(b->s >= 1.0)) reject("bridge: s >= 1 required");
        if (!(b->sigma > 0.0)) reject("bridge: sigma > 0 required");
        const double e = std::exp(1.0);
        for (int k = 0; k <= K; ++k)
            logM[k] = b->s * std::lgamma(k + 1.0) + b->sigma * k * std::log(std::log(k + e));
    } else if (const auto* l = std::get_if<Lqr>(&f)) {
        if (!(l->q > 1.0)) reject("lqr: q > 1 required");
        if (!(l->r > 1.0)) reject("lqr: r > 1 required");
        for (int k = 0; k <= K; ++k) logM[k] = std::pow(static_cast<double>(k), l->r) * std::log(l->q);
    } else {
        const auto& n = std::get<QGevrey>(f);
        if (!(n.q > 1.0)) reject("qgevrey: q > 1 required");
        for (int k = 0; k <= K; ++k) logM[k] = static_cast<double>(k) * k * std::log(n.q);
    }
    logM[0] = 0.0;
    return make_sequence(family_name(f), std::move(logM));
}

Family parse_family(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) reject("family: empty spec");

    const std::string& kind = parts[0];
    auto want = [&](std::size_t n) {
        if (parts.size() != n + 1)
            reject("family '" + kind + "': expected " + std::to_string(n) + " parameter(s)");
    };
    if (kind == "gevrey") {
        want(1);
        return Gevrey{parse_number(parts[1], kind)};
    }
    if (kind == "bridge") {
        want(2);
        return Bridge{parse_number(parts[1], kind), parse_number(parts[2], kind)};
    }
    if (kind == "lqr") {
        want(2);
        return Lqr{parse_number(parts[1], kind), parse_number(parts[2], kind)};
    }
    if (kind == "qgevrey") {
        want(1);
        return QGevrey{parse_number(parts[1], kind)};
    }
    reject("family: unknown kind '" + kind + "'");
}

std::string family_name(const Family& f) {
    std::ostringstream os;
    if (const auto* g = std::get_if<Gevrey>(&f))
        os << "gevrey(" << g->s << ")";
    else if (const auto* b = std::get_if<Bridge>(&f))
        os << "bridge(" << b->s << "," << b->sigma << ")";
    else if (const auto* l = std::get_if<Lqr>(&f))
        os << "lqr(" << l->q << "," << l->r << ")";
    else
        os << "qgevrey(" << std::get<QGevrey>(f).q << ")";
    return os.str();
}

}  // namespace ultra::seqcore
