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

#pragma once

#include "cpa/common.hpp"
#include "cpa/geometry.hpp"
#include "cpa/layout.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cpa
{
    // Complex field sampled along one angular coordinate (degrees)
    struct PatternCut
    {
        std::vector<double> angles_deg;
        std::vector<cdouble> values;
        double wavelength = 1.0;

        size_t size() const { return values.size(); }
        std::vector<double> power() const;
        double peak_power() const;
        void validate() const;
    };

    // Scalar or tabulated element gain. Tabulated patterns are bilinear in
    // (theta, phi); phi wraps when the table spans a full turn.
    class ElementPattern
    {
    public:
        static ElementPattern isotropic();
        static ElementPattern tabulated(std::vector<double> theta_deg, std::vector<double> phi_deg,
                                        std::vector<cdouble> values_row_major_theta);

        bool is_isotropic() const { return isotropic_; }
        cdouble operator()(double theta_deg, double phi_deg) const;

        const std::vector<double> &theta_deg() const { return theta_; }
        const std::vector<double> &phi_deg() const { return phi_; }
        const std::vector<cdouble> &values() const { return values_; }

    private:
        bool isotropic_ = true;
        bool phi_periodic_ = false;
        std::vector<double> theta_, phi_;
        std::vector<cdouble> values_;
    };

    // Radiating elements with one weight column per beam. Positions share the
    // length unit of the wavelength passed to the evaluators.
    struct ArraySource
    {
        std::vector<ElementPosition> positions;
        std::vector<double> element_azimuth_rad; // frame in which the element pattern is queried
        Eigen::MatrixXcd weights;               // elements x beams

        int element_count() const { return static_cast<int>(positions.size()); }
        int beam_count() const { return static_cast<int>(weights.cols()); }
        void validate() const;
    };

    // Field of every beam at the given directions (radians), directions x beams
    Eigen::MatrixXcd evaluate_field(const ArraySource &src, std::span<const double> theta_rad,
                                    std::span<const double> phi_rad, double wavelength,
                                    const ElementPattern &element);

    // Coherent plank sum, optionally referenced to the steer angle:
    // F(t) = sum w_m exp(j 2pi/lambda xi_m (cos t - cos t_b)). Not normalized.
    PatternCut array_factor_cut(const PlankLayout &layout, std::span<const cdouble> weights,
                                std::span<const double> angles_deg, double wavelength = 1.0,
                                std::optional<double> steer_deg = std::nullopt);

    struct GridSpec
    {
        int nv = 301;
        int nw = 301;
    };

    // (v, w) = (sin t sin p, cos t) over the forward hemisphere of a frame
    // facing azimuth `facing_azimuth_deg`
    struct Pattern2D
    {
        int nv = 0, nw = 0;
        std::vector<double> v, w;
        std::vector<cdouble> values; // index iw * nv + iv
        std::vector<std::uint8_t> mask;
        double wavelength = 1.0;
        double frequency_hz = 0.0;
        double facing_azimuth_deg = 0.0;
        int beam = 0;

        size_t index(int iv, int iw) const { return static_cast<size_t>(iw) * nv + iv; }
        double peak_power() const;
    };

    std::vector<Pattern2D> pattern_2d(const ArraySource &src, const GridSpec &grid, double wavelength,
                                      const ElementPattern &element, double facing_azimuth_deg = 0.0);

    Pattern2D pattern_2d(const std::vector<std::pair<ElementPosition, cdouble>> &elements,
                         const GridSpec &grid, double wavelength, const ElementPattern &element);

    // Global direction of a disk point in a frame facing `facing_azimuth_deg`
    std::pair<double, double> disk_direction(double v, double w, double facing_azimuth_deg); // (theta, phi) rad

    struct BeamMetrics
    {
        std::optional<double> sll_db;
        std::optional<double> sll_el_db;
        double directivity_dbi = 0.0;
        double hpbw_el_deg = 0.0;
        std::optional<double> hpbw_az_deg;
        double chi = 0.0;
        double peak_angle_deg = 0.0;
    };

    // Main lobe of a sampled power curve grown from the local maximum nearest `seed`
    struct LobeInfo
    {
        size_t peak = 0;
        double left_3db = 0.0, right_3db = 0.0; // interpolated -3 dB abscissae
        std::optional<double> sll_db;
    };

    LobeInfo analyze_lobe(std::span<const double> x, std::span<const double> power, size_t seed);

    // SLL, cut directivity 2|F(u0)|^2 / int |F|^2 du and HPBW of a cut spanning [0, 180]
    BeamMetrics metrics(const PatternCut &cut, double steer_deg);

    // 2D sidelobe level; the main lobe is the downhill basin of the global peak
    struct Sidelobe2D
    {
        std::optional<double> sll_db;
        int peak_iv = 0, peak_iw = 0;
    };

    Sidelobe2D sidelobe_level_2d(const Pattern2D &pattern);

    // Radiated power integral of every beam over the full sphere at `step_deg`
    std::vector<double> sphere_power(const ArraySource &src, double wavelength, const ElementPattern &element,
                                     double step_deg = 1.0);

    double directivity_dbi(double peak_power, double sphere_power_integral);

    PatternCut peak_normalized(const PatternCut &cut);
    Pattern2D peak_normalized(const Pattern2D &pattern);

    // Integrated power mismatch; inputs are expected to be peak-normalized
    double chi_cut(const PatternCut &reference, const PatternCut &actual);
    double chi_2d(const Pattern2D &reference, const Pattern2D &actual);

    struct MismatchMap
    {
        int nv = 0, nw = 0;
        std::vector<double> v, w;
        std::vector<double> values; // NaN where undefined
        std::vector<std::uint8_t> defined;
    };

    MismatchMap local_mismatch(const Pattern2D &reference, const Pattern2D &actual, double floor = 1e-12);
}
