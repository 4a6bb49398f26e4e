#include "svir/delay.hpp"

#include "svir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace svir {

KernelQuadrature build_quadrature(const DelayKernel& g, std::size_t n_nodes)
{
    if (n_nodes < 1) {
        throw ConfigError("kernel quadrature needs n_nodes >= 1");
    }
    if (g.family() == KernelFamily::dirac) {
        return {{g.dirac_location()}, {1.0}};
    }
    const double k = g.horizon();
    if (!(k > 0.0)) {
        throw DegenerateKernel(std::string(to_string(g.family())) +
                               " kernel with k = 0 has no support; use dirac(0) instead");
    }
    KernelQuadrature q;
    q.nodes.resize(n_nodes);
    q.weights.resize(n_nodes);
    const double dtau = k / static_cast<double>(n_nodes);
    double total = 0.0;
    for (std::size_t j = 0; j < n_nodes; ++j) {
        q.nodes[j] = (static_cast<double>(j) + 0.5) * dtau;
        q.weights[j] = g.density(q.nodes[j]) * dtau;
        total += q.weights[j];
    }
    if (!(total > 0.0)) {
        throw DegenerateKernel("kernel density vanishes at every quadrature node");
    }
    for (double& w : q.weights) {
        w /= total;
    }
    return q;
}

HistoryBuffer::HistoryBuffer(double horizon) : horizon_(horizon)
{
    if (!(horizon >= 0.0)) {
        throw ConfigError("history horizon must be >= 0");
    }
}

void HistoryBuffer::push(FieldState snapshot)
{
    if (!snapshots_.empty() && !(snapshot.t > snapshots_.back().t)) {
        throw Error("history snapshots must have strictly increasing times (got " +
                    std::to_string(snapshot.t) + " after " + std::to_string(snapshots_.back().t) + ")");
    }
    snapshots_.push_back(std::move(snapshot));
}

void HistoryBuffer::trim(double t_now, double dt)
{
    const double keep_from = t_now - horizon_;
    while (snapshots_.size() >= 2 && snapshots_.front().t < keep_from - 2.0 * dt &&
           snapshots_[1].t <= keep_from) {
        snapshots_.pop_front();
    }
}

double HistoryBuffer::oldest_time() const
{
    if (snapshots_.empty()) {
        throw HistoryUnderflow("history is empty");
    }
    return snapshots_.front().t;
}

double HistoryBuffer::newest_time() const
{
    return newest().t;
}

const FieldState& HistoryBuffer::newest() const
{
    if (snapshots_.empty()) {
        throw HistoryUnderflow("history is empty");
    }
    return snapshots_.back();
}

HistoryBuffer::Bracket HistoryBuffer::locate(double t_query, const FieldState* leading) const
{
    const double t_old = oldest_time();
    const double t_new = newest_time();
    const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::fabs(t_query), std::fabs(t_old)});

    if (t_query > t_new) {
        if (leading && leading->t > t_new && t_query <= leading->t + slack) {
            const double w = std::min(1.0, (t_query - t_new) / (leading->t - t_new));
            return {&snapshots_.back(), leading, w};
        }
        if (t_query - t_new <= slack) {
            return {&snapshots_.back(), &snapshots_.back(), 0.0};
        }
        throw HistoryUnderflow("history query at t = " + std::to_string(t_query) +
                               " is newer than the stored window end " + std::to_string(t_new));
    }
    if (t_query < t_old) {
        if (t_old - t_query <= slack) {
            return {&snapshots_.front(), &snapshots_.front(), 0.0};
        }
        throw HistoryUnderflow("history query at t = " + std::to_string(t_query) +
                               " precedes the stored window start " + std::to_string(t_old) +
                               " (buffer too short for the kernel horizon?)");
    }
    auto it = std::upper_bound(snapshots_.begin(), snapshots_.end(), t_query,
                               [](double t, const FieldState& s) { return t < s.t; });
    // it points past the last snapshot with time <= t_query
    const FieldState& a = *std::prev(it);
    if (it == snapshots_.end() || a.t == t_query) {
        return {&a, &a, 0.0};
    }
    const FieldState& b = *it;
    return {&a, &b, (t_query - a.t) / (b.t - a.t)};
}

FieldState HistoryBuffer::sample(double t_query) const
{
    const Bracket br = locate(t_query, nullptr);
    FieldState out;
    out.t = t_query;
    for (Compartment c : all_compartments) {
        const Field& a = br.a->field(c);
        const Field& b = br.b->field(c);
        Field& dst = out.field(c);
        dst.resize(a.size());
        for (std::size_t x = 0; x < a.size(); ++x) {
            dst[x] = br.weight_b == 0.0 ? a[x] : (1.0 - br.weight_b) * a[x] + br.weight_b * b[x];
        }
    }
    return out;
}

void HistoryBuffer::sample_field(Compartment c, double t_query, std::span<double> out,
                                 const FieldState* leading) const
{
    const Bracket br = locate(t_query, leading);
    const Field& a = br.a->field(c);
    const Field& b = br.b->field(c);
    if (out.size() != a.size() || b.size() != a.size()) {
        throw SizeMismatch("history field size does not match the output span");
    }
    const double w = br.weight_b;
    for (std::size_t x = 0; x < a.size(); ++x) {
        out[x] = w == 0.0 ? a[x] : (1.0 - w) * a[x] + w * b[x];
    }
}

FieldState history_sample(const HistoryBuffer& hb, double t_query)
{
    return hb.sample(t_query);
}

Field delay_incidence(const HistoryBuffer& hb, const KernelQuadrature& q, double t,
                      const IncidenceFunction& inc, const FieldState* leading)
{
    const std::size_t n = leading ? leading->nodes() : hb.newest().nodes();
    Field out(n, 0.0);
    Field lagged(n);
    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
        hb.sample_field(Compartment::I, t - q.nodes[j], lagged, leading);
        const double w = q.weights[j];
        for (std::size_t x = 0; x < n; ++x) {
            // stage values may undershoot zero by roundoff
            out[x] += w * inc.value(std::max(lagged[x], 0.0));
        }
    }
    return out;
}

} // namespace svir
