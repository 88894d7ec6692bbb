// SPDX-License-Identifier: Apache-2.0
//
// cpa-synth: sparse multi-beam conical phased array synthesis
// Copyright (C) 2026 The cpa-synth contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cpa/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace cpa
{
    namespace
    {
        constexpr size_t kChunk = 512; // directions per field block

        std::vector<double> trapezoid_weights(const std::vector<double> &x)
        {
            std::vector<double> wts(x.size(), 0.0);
            for (size_t i = 1; i < x.size(); ++i)
            {
                const double h = 0.5 * (x[i] - x[i - 1]);
                wts[i - 1] += h;
                wts[i] += h;
            }
            return wts;
        }

        double to_db(double ratio)
        {
            return 10.0 * std::log10(std::max(ratio, 1e-300));
        }

        void check_same_grid(const std::vector<double> &a, const std::vector<double> &b, const char *what)
        {
            if (a.size() != b.size())
                throw std::invalid_argument(std::string(what) + ": sample grids differ in size");
            for (size_t i = 0; i < a.size(); ++i)
                if (std::abs(a[i] - b[i]) > 1e-9 * std::max(1.0, std::abs(a[i])))
                    throw std::invalid_argument(std::string(what) + ": sample grids differ");
        }

        // Interpolated abscissa where the dB curve crosses `level` between i and i+1
        double crossing(std::span<const double> x, const std::vector<double> &db, size_t i, double level)
        {
            const double d = db[i + 1] - db[i];
            if (d == 0.0)
                return x[i];
            return x[i] + (level - db[i]) / d * (x[i + 1] - x[i]);
        }
    }

    // ---------------------------------------------------------------- PatternCut

    std::vector<double> PatternCut::power() const
    {
        std::vector<double> p(values.size());
        for (size_t i = 0; i < values.size(); ++i)
            p[i] = std::norm(values[i]);
        return p;
    }

    double PatternCut::peak_power() const
    {
        double m = 0.0;
        for (const auto &v : values)
            m = std::max(m, std::norm(v));
        return m;
    }

    void PatternCut::validate() const
    {
        if (angles_deg.size() != values.size())
            throw std::invalid_argument("pattern cut: angle and value counts differ");
        for (size_t i = 0; i < angles_deg.size(); ++i)
        {
            if (angles_deg[i] < -1e-9 || angles_deg[i] > 180.0 + 1e-9)
                throw std::invalid_argument("pattern cut: angles must lie within [0, 180]");
            if (i > 0 && !(angles_deg[i] > angles_deg[i - 1]))
                throw std::invalid_argument("pattern cut: angles must be strictly increasing");
        }
    }

    // ------------------------------------------------------------ ElementPattern

    ElementPattern ElementPattern::isotropic()
    {
        return ElementPattern{};
    }

    ElementPattern ElementPattern::tabulated(std::vector<double> theta_deg, std::vector<double> phi_deg,
                                             std::vector<cdouble> values)
    {
        if (theta_deg.size() < 2 || phi_deg.size() < 2)
            throw std::invalid_argument("element pattern needs at least 2 samples per axis");
        if (values.size() != theta_deg.size() * phi_deg.size())
            throw std::invalid_argument("element pattern value count does not match the grid");
        for (size_t i = 1; i < theta_deg.size(); ++i)
            if (!(theta_deg[i] > theta_deg[i - 1]))
                throw std::invalid_argument("element pattern theta axis must be increasing");
        for (size_t i = 1; i < phi_deg.size(); ++i)
            if (!(phi_deg[i] > phi_deg[i - 1]))
                throw std::invalid_argument("element pattern phi axis must be increasing");
        for (const auto &v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("element pattern contains non-finite values");

        ElementPattern e;
        e.isotropic_ = false;
        const double span = phi_deg.back() - phi_deg.front();
        const double step = phi_deg[1] - phi_deg[0];
        if (span >= 360.0 - 1e-9)
            e.phi_periodic_ = true;
        else if (std::abs(span + step - 360.0) < 1e-6)
        {
            // open periodic table: close it with a copy of the first column
            const size_t nt = theta_deg.size(), np = phi_deg.size();
            std::vector<cdouble> closed(nt * (np + 1));
            for (size_t t = 0; t < nt; ++t)
            {
                for (size_t p = 0; p < np; ++p)
                    closed[t * (np + 1) + p] = values[t * np + p];
                closed[t * (np + 1) + np] = values[t * np];
            }
            values = std::move(closed);
            phi_deg.push_back(phi_deg.front() + 360.0);
            e.phi_periodic_ = true;
        }
        e.theta_ = std::move(theta_deg);
        e.phi_ = std::move(phi_deg);
        e.values_ = std::move(values);
        return e;
    }

    cdouble ElementPattern::operator()(double theta_deg, double phi_deg) const
    {
        if (isotropic_)
            return {1.0, 0.0};

        const double tol = 1e-9;
        if (theta_deg < theta_.front() - tol || theta_deg > theta_.back() + tol)
            throw std::out_of_range("element pattern queried outside its theta range: " + std::to_string(theta_deg));
        double ph = phi_deg;
        if (phi_periodic_)
        {
            ph = phi_.front() + std::fmod(ph - phi_.front(), 360.0);
            if (ph < phi_.front())
                ph += 360.0;
        }
        else if (ph < phi_.front() - tol || ph > phi_.back() + tol)
        {
            // a fixed table may still cover the query after one turn
            if (ph + 360.0 <= phi_.back() + tol)
                ph += 360.0;
            else if (ph - 360.0 >= phi_.front() - tol)
                ph -= 360.0;
            else
                throw std::out_of_range("element pattern queried outside its phi range: " + std::to_string(phi_deg));
        }

        const double th = std::clamp(theta_deg, theta_.front(), theta_.back());
        ph = std::clamp(ph, phi_.front(), phi_.back());
        auto bracket = [](const std::vector<double> &axis, double x)
        {
            size_t i = std::upper_bound(axis.begin(), axis.end(), x) - axis.begin();
            i = std::clamp<size_t>(i, 1, axis.size() - 1) - 1;
            const double f = (x - axis[i]) / (axis[i + 1] - axis[i]);
            return std::pair<size_t, double>(i, f);
        };
        const auto [it, ft] = bracket(theta_, th);
        const auto [ip, fp] = bracket(phi_, ph);
        const size_t np = phi_.size();
        const cdouble v00 = values_[it * np + ip], v01 = values_[it * np + ip + 1];
        const cdouble v10 = values_[(it + 1) * np + ip], v11 = values_[(it + 1) * np + ip + 1];
        return (1.0 - ft) * ((1.0 - fp) * v00 + fp * v01) + ft * ((1.0 - fp) * v10 + fp * v11);
    }

    // --------------------------------------------------------------- ArraySource

    void ArraySource::validate() const
    {
        if (positions.empty())
            throw std::invalid_argument("array source has no elements");
        if (element_azimuth_rad.size() != positions.size() || weights.rows() != element_count())
            throw std::invalid_argument("array source: element, azimuth and weight counts differ");
        if (weights.cols() < 1)
            throw std::invalid_argument("array source needs at least one beam");
    }

    Eigen::MatrixXcd evaluate_field(const ArraySource &src, std::span<const double> theta_rad,
                                    std::span<const double> phi_rad, double wavelength,
                                    const ElementPattern &element)
    {
        src.validate();
        if (theta_rad.size() != phi_rad.size())
            throw std::invalid_argument("evaluate_field: theta and phi counts differ");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("wavelength must be positive");

        const double k = kTwoPi / wavelength;
        const size_t n = theta_rad.size();
        const int ne = src.element_count();
        Eigen::MatrixXcd out(n, src.beam_count());
        Eigen::MatrixXcd phasor;

        for (size_t start = 0; start < n; start += kChunk)
        {
            const size_t len = std::min(kChunk, n - start);
            phasor.resize(len, ne);
            for (size_t d = 0; d < len; ++d)
            {
                const double th = theta_rad[start + d], ph = phi_rad[start + d];
                const double ux = std::sin(th) * std::cos(ph), uy = std::sin(th) * std::sin(ph), uz = std::cos(th);
                for (int e = 0; e < ne; ++e)
                {
                    const auto &p = src.positions[e];
                    const double arg = k * (p.x * ux + p.y * uy + p.z * uz);
                    cdouble v(std::cos(arg), std::sin(arg));
                    if (!element.is_isotropic())
                    {
                        double local = rad2deg(ph - src.element_azimuth_rad[e]);
                        local = std::remainder(local, 360.0);
                        v *= element(rad2deg(th), local);
                    }
                    phasor(d, e) = v;
                }
            }
            out.middleRows(start, len).noalias() = phasor * src.weights;
        }
        return out;
    }

    PatternCut array_factor_cut(const PlankLayout &layout, std::span<const cdouble> weights,
                                std::span<const double> angles_deg, double wavelength,
                                std::optional<double> steer_deg)
    {
        if (layout.positions.size() != weights.size())
            throw std::invalid_argument("array_factor_cut: layout and weight counts differ");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("wavelength must be positive");
        const double k = kTwoPi / wavelength;
        const double u0 = steer_deg ? std::cos(deg2rad(*steer_deg)) : 0.0;

        PatternCut cut;
        cut.wavelength = wavelength;
        cut.angles_deg.assign(angles_deg.begin(), angles_deg.end());
        cut.values.resize(angles_deg.size());
        for (size_t i = 0; i < angles_deg.size(); ++i)
        {
            const double du = std::cos(deg2rad(angles_deg[i])) - u0;
            cdouble acc = 0.0;
            for (size_t m = 0; m < weights.size(); ++m)
            {
                const double arg = k * layout.positions[m] * du;
                acc += weights[m] * cdouble(std::cos(arg), std::sin(arg));
            }
            cut.values[i] = acc;
        }
        return cut;
    }

    // ----------------------------------------------------------------- Pattern2D

    double Pattern2D::peak_power() const
    {
        double m = 0.0;
        for (size_t i = 0; i < values.size(); ++i)
            if (mask[i])
                m = std::max(m, std::norm(values[i]));
        return m;
    }

    std::pair<double, double> disk_direction(double v, double w, double facing_azimuth_deg)
    {
        const double p = std::sqrt(std::max(0.0, 1.0 - v * v - w * w));
        const double theta = std::acos(std::clamp(w, -1.0, 1.0));
        const double phi = deg2rad(facing_azimuth_deg) + std::atan2(v, p);
        return {theta, phi};
    }

    std::vector<Pattern2D> pattern_2d(const ArraySource &src, const GridSpec &grid, double wavelength,
                                      const ElementPattern &element, double facing_azimuth_deg)
    {
        if (grid.nv < 2 || grid.nw < 2)
            throw std::invalid_argument("pattern_2d: grid needs at least 2x2 samples");
        src.validate();

        Pattern2D base;
        base.nv = grid.nv;
        base.nw = grid.nw;
        base.v = linspace(-1.0, 1.0, grid.nv);
        base.w = linspace(-1.0, 1.0, grid.nw);
        base.wavelength = wavelength;
        base.facing_azimuth_deg = facing_azimuth_deg;
        base.mask.assign(static_cast<size_t>(grid.nv) * grid.nw, 0);
        base.values.assign(base.mask.size(), cdouble(0.0));

        std::vector<size_t> inside;
        std::vector<double> th, ph;
        for (int iw = 0; iw < grid.nw; ++iw)
            for (int iv = 0; iv < grid.nv; ++iv)
            {
                const double v = base.v[iv], w = base.w[iw];
                if (v * v + w * w <= 1.0 + 1e-12)
                {
                    const size_t idx = base.index(iv, iw);
                    base.mask[idx] = 1;
                    inside.push_back(idx);
                    const auto [t, p] = disk_direction(v, w, facing_azimuth_deg);
                    th.push_back(t);
                    ph.push_back(p);
                }
            }

        const Eigen::MatrixXcd field = evaluate_field(src, th, ph, wavelength, element);
        std::vector<Pattern2D> out(src.beam_count(), base);
        for (int b = 0; b < src.beam_count(); ++b)
        {
            out[b].beam = b;
            for (size_t i = 0; i < inside.size(); ++i)
                out[b].values[inside[i]] = field(i, b);
        }
        return out;
    }

    Pattern2D pattern_2d(const std::vector<std::pair<ElementPosition, cdouble>> &elements,
                         const GridSpec &grid, double wavelength, const ElementPattern &element)
    {
        if (elements.empty())
            throw std::invalid_argument("pattern_2d: element list is empty");
        ArraySource src;
        src.weights.resize(elements.size(), 1);
        for (size_t i = 0; i < elements.size(); ++i)
        {
            src.positions.push_back(elements[i].first);
            src.element_azimuth_rad.push_back(0.0);
            src.weights(i, 0) = elements[i].second;
        }
        return pattern_2d(src, grid, wavelength, element, 0.0).front();
    }

    // ------------------------------------------------------------------- metrics

    LobeInfo analyze_lobe(std::span<const double> x, std::span<const double> power, size_t seed)
    {
        const size_t n = power.size();
        if (n < 3 || x.size() != n)
            throw std::invalid_argument("analyze_lobe: need at least 3 matching samples");
        size_t p = std::min(seed, n - 1);
        // climb to the local maximum
        for (;;)
        {
            if (p > 0 && power[p - 1] > power[p])
                --p;
            else if (p + 1 < n && power[p + 1] > power[p])
                ++p;
            else
                break;
        }
        const double pk = power[p];
        if (!(pk > 0.0))
            throw DegeneratePatternError("pattern has no radiated power");
        std::vector<double> db(n);
        for (size_t i = 0; i < n; ++i)
            db[i] = to_db(power[i] / pk);

        LobeInfo info;
        info.peak = p;
        size_t j = p;
        while (j > 0 && db[j] > -3.0)
            --j;
        if (db[j] > -3.0)
            throw DegeneratePatternError("no -3 dB crossing left of the peak");
        info.left_3db = crossing(x, db, j, -3.0);
        j = p;
        while (j + 1 < n && db[j] > -3.0)
            ++j;
        if (db[j] > -3.0)
            throw DegeneratePatternError("no -3 dB crossing right of the peak");
        info.right_3db = crossing(x, db, j - 1, -3.0);

        // main lobe ends at the first local minima at least 3 dB down
        size_t a = p;
        while (a > 0 && !(power[a - 1] > power[a] && db[a] < -3.0))
            --a;
        size_t b = p;
        while (b + 1 < n && !(power[b + 1] > power[b] && db[b] < -3.0))
            ++b;
        double worst = -std::numeric_limits<double>::infinity();
        bool found = false;
        if (a > 0)
        {
            for (size_t i = 0; i <= a; ++i)
                worst = std::max(worst, db[i]);
            found = true;
        }
        if (b + 1 < n)
        {
            for (size_t i = b; i < n; ++i)
                worst = std::max(worst, db[i]);
            found = true;
        }
        if (found)
            info.sll_db = worst;
        return info;
    }

    BeamMetrics metrics(const PatternCut &cut, double steer_deg)
    {
        cut.validate();
        const std::vector<double> pw = cut.power();
        size_t seed = 0;
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < cut.size(); ++i)
            if (std::abs(cut.angles_deg[i] - steer_deg) < best)
            {
                best = std::abs(cut.angles_deg[i] - steer_deg);
                seed = i;
            }
        const LobeInfo lobe = analyze_lobe(cut.angles_deg, pw, seed);

        double integral = 0.0;
        for (size_t i = 1; i < cut.size(); ++i)
        {
            const double t0 = deg2rad(cut.angles_deg[i - 1]), t1 = deg2rad(cut.angles_deg[i]);
            integral += 0.5 * (pw[i - 1] * std::sin(t0) + pw[i] * std::sin(t1)) * (t1 - t0);
        }

        BeamMetrics m;
        m.sll_db = lobe.sll_db;
        m.sll_el_db = lobe.sll_db;
        m.hpbw_el_deg = lobe.right_3db - lobe.left_3db;
        m.peak_angle_deg = cut.angles_deg[lobe.peak];
        m.directivity_dbi = to_db(2.0 * pw[lobe.peak] / integral);
        return m;
    }

    Sidelobe2D sidelobe_level_2d(const Pattern2D &pattern)
    {
        const size_t n = pattern.values.size();
        std::vector<double> pw(n, 0.0);
        size_t peak = n;
        double pk = -1.0;
        for (size_t i = 0; i < n; ++i)
            if (pattern.mask[i])
            {
                pw[i] = std::norm(pattern.values[i]);
                if (pw[i] > pk)
                {
                    pk = pw[i];
                    peak = i;
                }
            }
        if (peak == n || !(pk > 0.0))
            throw DegeneratePatternError("2D pattern has no radiated power");

        std::vector<std::uint8_t> basin(n, 0);
        std::deque<size_t> queue{peak};
        basin[peak] = 1;
        const double half = 0.5 * pk;
        while (!queue.empty())
        {
            const size_t c = queue.front();
            queue.pop_front();
            const int iv = static_cast<int>(c % pattern.nv), iw = static_cast<int>(c / pattern.nv);
            const int nb[4][2] = {{iv - 1, iw}, {iv + 1, iw}, {iv, iw - 1}, {iv, iw + 1}};
            for (const auto &q : nb)
            {
                if (q[0] < 0 || q[0] >= pattern.nv || q[1] < 0 || q[1] >= pattern.nw)
                    continue;
                const size_t j = pattern.index(q[0], q[1]);
                if (!pattern.mask[j] || basin[j])
                    continue;
                if (pw[j] <= pw[c] || pw[j] >= half)
                {
                    basin[j] = 1;
                    queue.push_back(j);
                }
            }
        }

        Sidelobe2D out;
        out.peak_iv = static_cast<int>(peak % pattern.nv);
        out.peak_iw = static_cast<int>(peak / pattern.nv);
        double worst = -1.0;
        for (size_t i = 0; i < n; ++i)
            if (pattern.mask[i] && !basin[i])
                worst = std::max(worst, pw[i]);
        if (worst >= 0.0)
            out.sll_db = to_db(worst / pk);
        return out;
    }

    std::vector<double> sphere_power(const ArraySource &src, double wavelength, const ElementPattern &element,
                                     double step_deg)
    {
        if (!(step_deg > 0.0) || std::abs(180.0 / step_deg - std::round(180.0 / step_deg)) > 1e-9)
            throw std::invalid_argument("sphere step must divide 180 degrees");
        const int nt = static_cast<int>(std::lround(180.0 / step_deg)) + 1;
        const int np = 2 * (nt - 1);
        const double h = deg2rad(step_deg);

        std::vector<double> th, ph, wt;
        th.reserve(static_cast<size_t>(nt) * np);
        for (int i = 0; i < nt; ++i)
        {
            const double t = h * i;
            const double wtheta = ((i == 0 || i == nt - 1) ? 0.5 : 1.0) * h * std::sin(t);
            if (wtheta == 0.0)
                continue;
            for (int j = 0; j < np; ++j)
            {
                th.push_back(t);
                ph.push_back(h * j);
                wt.push_back(wtheta * h);
            }
        }
        const Eigen::MatrixXcd field = evaluate_field(src, th, ph, wavelength, element);
        std::vector<double> out(src.beam_count(), 0.0);
        for (int b = 0; b < src.beam_count(); ++b)
            for (size_t i = 0; i < wt.size(); ++i)
                out[b] += wt[i] * std::norm(field(i, b));
        return out;
    }

    double directivity_dbi(double peak_power, double sphere_power_integral)
    {
        if (!(sphere_power_integral > 0.0))
            throw DegeneratePatternError("radiated power integral is zero");
        return to_db(4.0 * kPi * peak_power / sphere_power_integral);
    }

    PatternCut peak_normalized(const PatternCut &cut)
    {
        PatternCut out = cut;
        const double pk = std::sqrt(cut.peak_power());
        if (pk > 0.0)
            for (auto &v : out.values)
                v /= pk;
        return out;
    }

    Pattern2D peak_normalized(const Pattern2D &pattern)
    {
        Pattern2D out = pattern;
        const double pk = std::sqrt(pattern.peak_power());
        if (pk > 0.0)
            for (auto &v : out.values)
                v /= pk;
        return out;
    }

    double chi_cut(const PatternCut &reference, const PatternCut &actual)
    {
        check_same_grid(reference.angles_deg, actual.angles_deg, "chi_cut");
        if (reference.size() != reference.angles_deg.size() || actual.size() != actual.angles_deg.size())
            throw std::invalid_argument("chi_cut: value and angle counts differ");
        const std::vector<double> wts = trapezoid_weights(reference.angles_deg);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < wts.size(); ++i)
        {
            const double pr = std::norm(reference.values[i]), pa = std::norm(actual.values[i]);
            num += wts[i] * std::abs(pr - pa);
            den += wts[i] * pr;
        }
        if (!(den > 0.0))
            throw std::invalid_argument("chi_cut: reference pattern carries no power");
        return num / den;
    }

    double chi_2d(const Pattern2D &reference, const Pattern2D &actual)
    {
        if (reference.nv != actual.nv || reference.nw != actual.nw)
            throw std::invalid_argument("chi_2d: grid dimensions differ");
        check_same_grid(reference.v, actual.v, "chi_2d");
        check_same_grid(reference.w, actual.w, "chi_2d");
        const std::vector<double> wv = trapezoid_weights(reference.v), ww = trapezoid_weights(reference.w);
        double num = 0.0, den = 0.0;
        for (int iw = 0; iw < reference.nw; ++iw)
            for (int iv = 0; iv < reference.nv; ++iv)
            {
                const size_t i = reference.index(iv, iw);
                if (!reference.mask[i])
                    continue;
                const double wt = wv[iv] * ww[iw];
                const double pr = std::norm(reference.values[i]), pa = std::norm(actual.values[i]);
                num += wt * std::abs(pr - pa);
                den += wt * pr;
            }
        if (!(den > 0.0))
            throw std::invalid_argument("chi_2d: reference pattern carries no power");
        return num / den;
    }

    MismatchMap local_mismatch(const Pattern2D &reference, const Pattern2D &actual, double floor)
    {
        if (reference.nv != actual.nv || reference.nw != actual.nw)
            throw std::invalid_argument("local_mismatch: grid dimensions differ");
        MismatchMap out;
        out.nv = reference.nv;
        out.nw = reference.nw;
        out.v = reference.v;
        out.w = reference.w;
        const size_t n = reference.values.size();
        out.values.assign(n, std::numeric_limits<double>::quiet_NaN());
        out.defined.assign(n, 0);
        const double cut = floor * reference.peak_power();
        for (size_t i = 0; i < n; ++i)
        {
            if (!reference.mask[i])
                continue;
            const double pr = std::norm(reference.values[i]);
            if (!(pr > cut) || pr == 0.0)
                continue;
            out.values[i] = std::abs(pr - std::norm(actual.values[i])) / pr;
            out.defined[i] = 1;
        }
        return out;
    }
}
