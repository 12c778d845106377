#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eitstore {

// One term of a Gaussian sum: amplitude * exp(-((u - center) / width)^2).
struct GaussianTerm {
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
};

enum class EnvelopeKind { gaussian_sum, plateau_gaussian, sampled };

// Plateau-with-Gaussian-edge profile shared by envelopes and coupling
// schedules. plateau_before_edge: constant amp up to `edge`, Gaussian decay
// after; otherwise Gaussian rise before `edge`, constant amp after. The
// Gaussian tail is clipped to exactly zero beyond trunc_widths edge widths.
inline double plateau_gaussian_value(double amp, double edge, double width,
                                     bool plateau_before_edge, double trunc_widths,
                                     double u) {
    const double s = (u - edge) / width;
    if (plateau_before_edge) {
        if (s <= 0.0) return amp;
        if (s > trunc_widths) return 0.0;
    } else {
        if (s >= 0.0) return amp;
        if (s < -trunc_widths) return 0.0;
    }
    return amp * std::exp(-s * s);
}

// Non-negative 1D shape function of one coordinate (time or transverse
// position). Three parametric families; evaluation is pure.
class Envelope {
public:
    Envelope() = default;

    static Envelope gaussian_sum(std::vector<GaussianTerm> terms, double trunc_widths = 6.0) {
        Envelope e;
        e.kind_ = EnvelopeKind::gaussian_sum;
        e.trunc_ = require_positive(trunc_widths, "truncation radius");
        for (const auto& t : terms) {
            if (!(t.amplitude >= 0.0) || !std::isfinite(t.amplitude))
                throw std::invalid_argument("gaussian term amplitude must be finite and >= 0");
            if (!(t.width > 0.0) || !std::isfinite(t.width))
                throw std::invalid_argument("gaussian term width must be finite and > 0");
            if (!std::isfinite(t.center))
                throw std::invalid_argument("gaussian term center must be finite");
        }
        e.terms_ = std::move(terms);
        return e;
    }

    static Envelope plateau_gaussian(double amp, double edge, double width,
                                     bool plateau_before_edge, double trunc_widths = 6.0) {
        Envelope e;
        e.kind_ = EnvelopeKind::plateau_gaussian;
        e.trunc_ = require_positive(trunc_widths, "truncation radius");
        if (!(amp >= 0.0) || !std::isfinite(amp))
            throw std::invalid_argument("plateau amplitude must be finite and >= 0");
        e.terms_ = {GaussianTerm{amp, edge, require_positive(width, "edge width")}};
        e.plateau_before_edge_ = plateau_before_edge;
        return e;
    }

    static Envelope sampled(double u0, double du, std::vector<double> values) {
        Envelope e;
        e.kind_ = EnvelopeKind::sampled;
        if (!(du > 0.0) || !std::isfinite(du) || !std::isfinite(u0))
            throw std::invalid_argument("sampled envelope needs finite u0 and du > 0");
        if (values.size() < 2)
            throw std::invalid_argument("sampled envelope needs at least two samples");
        for (double v : values)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("sampled envelope values must be finite and >= 0");
        e.u0_ = u0;
        e.du_ = du;
        e.samples_ = std::move(values);
        return e;
    }

    double operator()(double u) const {
        switch (kind_) {
        case EnvelopeKind::gaussian_sum: {
            double acc = 0.0;
            for (const auto& t : terms_) {
                const double s = (u - t.center) / t.width;
                if (std::abs(s) <= trunc_) acc += t.amplitude * std::exp(-s * s);
            }
            return acc;
        }
        case EnvelopeKind::plateau_gaussian:
            return plateau_gaussian_value(terms_[0].amplitude, terms_[0].center,
                                          terms_[0].width, plateau_before_edge_, trunc_, u);
        case EnvelopeKind::sampled: {
            const double s = (u - u0_) / du_;
            if (s <= 0.0 || s >= double(samples_.size() - 1)) {
                // clamp to the end samples only exactly at the ends
                if (s == 0.0) return samples_.front();
                if (s == double(samples_.size() - 1)) return samples_.back();
                return 0.0;
            }
            const auto k = static_cast<std::size_t>(s);
            const double w = s - double(k);
            return samples_[k] * (1.0 - w) + samples_[k + 1] * w;
        }
        }
        return 0.0;
    }

    // [min, max] outside of which the envelope is identically zero (or the
    // plateau holds); infinite on the plateau side of plateau_gaussian.
    std::pair<double, double> support() const {
        constexpr double inf = std::numeric_limits<double>::infinity();
        switch (kind_) {
        case EnvelopeKind::gaussian_sum: {
            if (terms_.empty()) return {0.0, 0.0};
            double lo = inf, hi = -inf;
            for (const auto& t : terms_) {
                lo = std::min(lo, t.center - trunc_ * t.width);
                hi = std::max(hi, t.center + trunc_ * t.width);
            }
            return {lo, hi};
        }
        case EnvelopeKind::plateau_gaussian: {
            const auto& t = terms_[0];
            return plateau_before_edge_ ? std::pair{-inf, t.center + trunc_ * t.width}
                                        : std::pair{t.center - trunc_ * t.width, inf};
        }
        case EnvelopeKind::sampled:
            return {u0_, u0_ + du_ * double(samples_.size() - 1)};
        }
        return {0.0, 0.0};
    }

    // Largest value on a finite window, by dense scan. Good enough for
    // regime diagnostics; not meant as a rigorous global optimum.
    double max_value(int samples = 4096) const {
        auto [lo, hi] = support();
        if (kind_ == EnvelopeKind::plateau_gaussian) return terms_[0].amplitude;
        if (!(hi > lo)) return (*this)(lo);
        double m = 0.0;
        for (int k = 0; k <= samples; ++k) {
            const double u = lo + (hi - lo) * double(k) / double(samples);
            m = std::max(m, (*this)(u));
        }
        return m;
    }

    // u -> u - delta: every feature moves to larger u by delta.
    Envelope shifted(double delta) const {
        Envelope e = *this;
        if (kind_ == EnvelopeKind::sampled) {
            e.u0_ += delta;
        } else {
            for (auto& t : e.terms_) t.center += delta;
        }
        return e;
    }

    Envelope scaled(double factor) const {
        if (!(factor >= 0.0) || !std::isfinite(factor))
            throw std::invalid_argument("scale factor must be finite and >= 0");
        Envelope e = *this;
        if (kind_ == EnvelopeKind::sampled) {
            for (auto& v : e.samples_) v *= factor;
        } else {
            for (auto& t : e.terms_) t.amplitude *= factor;
        }
        return e;
    }

    // Reinterpret a time envelope as a spatial one through the rigid map
    // u_space = -speed * u_time, scaling amplitudes by amp_scale. A feature
    // at time c lands at -speed*c: later injection sits at more negative
    // coordinate, as transport toward positive u_space requires.
    Envelope time_to_space(double speed, double amp_scale) const {
        if (!(speed > 0.0)) throw std::invalid_argument("map speed must be > 0");
        Envelope e = *this;
        switch (kind_) {
        case EnvelopeKind::gaussian_sum:
            for (auto& t : e.terms_) {
                t.amplitude *= amp_scale;
                t.center = -speed * t.center;
                t.width *= speed;
            }
            return e;
        case EnvelopeKind::sampled: {
            // mapped grid runs backwards; re-emit in ascending order
            std::vector<double> rev(samples_.rbegin(), samples_.rend());
            for (auto& v : rev) v *= amp_scale;
            const double last_u = u0_ + du_ * double(samples_.size() - 1);
            return Envelope::sampled(-speed * last_u, speed * du_, std::move(rev));
        }
        case EnvelopeKind::plateau_gaussian:
            throw std::invalid_argument("plateau envelope has no spatial image");
        }
        return e;
    }

    EnvelopeKind kind() const { return kind_; }
    const std::vector<GaussianTerm>& terms() const { return terms_; }
    double truncation_widths() const { return trunc_; }
    bool plateau_before_edge() const { return plateau_before_edge_; }
    double sample_origin() const { return u0_; }
    double sample_step() const { return du_; }
    const std::vector<double>& samples() const { return samples_; }

private:
    static double require_positive(double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(what) + " must be finite and > 0");
        return v;
    }

    EnvelopeKind kind_ = EnvelopeKind::gaussian_sum;
    std::vector<GaussianTerm> terms_;
    bool plateau_before_edge_ = true;
    double trunc_ = 6.0;
    double u0_ = 0.0;
    double du_ = 1.0;
    std::vector<double> samples_;
};

} // namespace eitstore
