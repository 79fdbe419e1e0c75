// SPDX-License-Identifier: Apache-2.0
//
// csiga: cross-splitting information geometry detectors for MU-MIMO uplink
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

#include <cmath>
#include <cstdint>
#include <vector>

#include "csiga/types.hpp"

namespace csiga {

/// Unit-energy square QAM constellation with per-axis Gray labeling.
///
/// Point index l enumerates the grid row-major over (I, Q) axis indices.
/// The bit label of a point is (gray(i) << B/2) | gray(q), so the first
/// B/2 bits select the in-phase level and the last B/2 the quadrature
/// level. Bit i of a label is counted from the most significant position,
/// i.e. bit 0 is the MSB of the in-phase Gray code.
struct Constellation {
    int order = 0;            // L
    int bits_per_symbol = 0;  // B = log2(L)
    std::vector<cplx> points;
    std::vector<std::uint32_t> labels;  // labels[l] = Gray bit pattern of point l

    std::uint32_t bit(int l, int i) const {
        return (labels[static_cast<std::size_t>(l)] >> (bits_per_symbol - 1 - i)) & 1u;
    }

    /// Index of the constellation point closest to v in Euclidean distance.
    int nearest(cplx v) const {
        int best = 0;
        double best_d2 = std::norm(v - points[0]);
        for (int l = 1; l < order; ++l) {
            const double d2 = std::norm(v - points[static_cast<std::size_t>(l)]);
            if (d2 < best_d2) {
                best_d2 = d2;
                best = l;
            }
        }
        return best;
    }

    /// Hamming distance between the labels of two points.
    int bit_errors(int a, int b) const {
        std::uint32_t x = labels[static_cast<std::size_t>(a)] ^ labels[static_cast<std::size_t>(b)];
        int c = 0;
        while (x) {
            c += static_cast<int>(x & 1u);
            x >>= 1;
        }
        return c;
    }
};

namespace detail {

inline std::uint32_t gray_code(std::uint32_t k) { return k ^ (k >> 1); }

}  // namespace detail

/// Builds the L-point square QAM constellation (L in {4, 16, 64}), scaled
/// to unit average symbol energy, with independent Gray codes on the two
/// axes. Axis levels are the odd integers {-(s-1), ..., -1, 1, ..., s-1}
/// for side length s = sqrt(L), scaled by 1/sqrt(2(L-1)/3).
inline Constellation make_constellation(int order) {
    if (order != 4 && order != 16 && order != 64) {
        throw std::invalid_argument("unsupported constellation order " + std::to_string(order) +
                                    " (expected 4, 16, or 64)");
    }
    Constellation c;
    c.order = order;
    c.bits_per_symbol = static_cast<int>(std::lround(std::log2(order)));
    const int side = static_cast<int>(std::lround(std::sqrt(order)));
    const int half_bits = c.bits_per_symbol / 2;
    // Mean energy of the unscaled {..,-3,-1,1,3,..}^2 grid is 2(L-1)/3.
    const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
    c.points.resize(static_cast<std::size_t>(order));
    c.labels.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < side; ++i) {
        for (int q = 0; q < side; ++q) {
            const int l = i * side + q;
            const double re = (2 * i - (side - 1)) * scale;
            const double im = (2 * q - (side - 1)) * scale;
            c.points[static_cast<std::size_t>(l)] = cplx(re, im);
            c.labels[static_cast<std::size_t>(l)] =
                (detail::gray_code(static_cast<std::uint32_t>(i)) << half_bits) |
                detail::gray_code(static_cast<std::uint32_t>(q));
        }
    }
    return c;
}

}  // namespace csiga
