#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>
#include <type_traits>

#include "error.hpp"
#include "quantities.hpp"

namespace dimass {

//---------------------------------------------------------------------------//
// Quartic sum
//---------------------------------------------------------------------------//

template<class T>
concept UnsignedWord = std::unsigned_integral<T>
                       || std::same_as<std::remove_cv_t<T>, unsigned __int128>;

namespace detail {
template<UnsignedWord T>
constexpr T checked_mul(T x, T y)
{
    if (x != 0 && y > std::numeric_limits<T>::max() / x)
    {
        throw InvalidInput("quartic sum overflows the result type");
    }
    return x * y;
}
}  // namespace detail

/*!
 * Sum of k^4 for k = 0..a, by the closed form a(a+1)(2a+1)(3a^2+3a-1)/30.
 *
 * The intermediate product is about 6a^5, so \c std::uint64_t is good for
 * a < ~1900. Use <tt>unsigned __int128</tt> for larger arguments; overflow
 * throws \c InvalidInput instead of wrapping.
 */
template<UnsignedWord T = std::uint64_t>
constexpr T quartic_sum(T a)
{
    using detail::checked_mul;
    if (a == 0)
    {
        return 0;
    }
    T const a2 = checked_mul(a, a);
    T const q = checked_mul(T{3}, a2) + checked_mul(T{3}, a) - T{1};
    T p = checked_mul(a, a + T{1});
    p = checked_mul(p, T{2} * a + T{1});
    p = checked_mul(p, q);
    return p / T{30};
}

//---------------------------------------------------------------------------//
// Approximate hierarchy formula
//---------------------------------------------------------------------------//

//! Closed-form approximation M_P * alpha^(2 (11 - D)); every step uses alpha_e.
inline MassValue eq1_mass(OrbitalIndex d, ModelConstants const& c)
{
    double scale = 1;
    for (int i = 0; i < 2 * (OrbitalIndex::max - d.value()); ++i)
    {
        scale *= c.alpha_e();
    }
    return MassValue::gev(c.planck_ref().in_gev() * scale);
}

//---------------------------------------------------------------------------//
// Electroweak mixing
//---------------------------------------------------------------------------//

struct ElectroweakMix
{
    double alpha_w;
    double theta_w_deg;
    double sin2_theta_w;
};

inline double deg_to_rad(double deg) noexcept
{
    return deg * std::numbers::pi / 180;
}

//! B_6 = M_e / alpha_e, the strong-row boson that feeds the Z row.
inline MassValue b6_mass(ModelConstants const& c)
{
    return c.m_electron() / c.alpha_e();
}

//! Solve alpha_w from B_6 = alpha_w^2 cos(theta_w) M_Z with M_Z given.
inline ElectroweakMix electroweak_mix(ModelConstants const& c)
{
    double const theta = deg_to_rad(c.theta_w_deg());
    double const s = std::sin(theta);
    double const alpha_w = std::sqrt(b6_mass(c) / c.m_z() / std::cos(theta));
    return {alpha_w, c.theta_w_deg(), s * s};
}

//---------------------------------------------------------------------------//
// Boson ladder
//---------------------------------------------------------------------------//

enum class GaugeLabel
{
    A,
    Pi_half,
    Z_L,
    X_R,
    X_L,
    Z_R,
    G
};

constexpr std::string_view to_string(GaugeLabel g) noexcept
{
    switch (g)
    {
        case GaugeLabel::A:
            return "A";
        case GaugeLabel::Pi_half:
            return "pi_1/2";
        case GaugeLabel::Z_L:
            return "Z_L^0";
        case GaugeLabel::X_R:
            return "X_R";
        case GaugeLabel::X_L:
            return "X_L";
        case GaugeLabel::Z_R:
            return "Z_R^0";
        case GaugeLabel::G:
            return "G";
    }
    return "?";
}

//! Static per-orbital metadata of the boson table.
struct BosonOrbitalInfo
{
    GaugeLabel gauge;
    std::string_view symmetry;
    std::string_view rule;
};

constexpr BosonOrbitalInfo boson_orbital_info(OrbitalIndex d) noexcept
{
    constexpr std::array<BosonOrbitalInfo, 7> table{{
        {GaugeLabel::A, "electromagnetic, U(1)", "M_e*alpha"},
        {GaugeLabel::Pi_half, "strong, SU(3) -> U(1)", "M_e/alpha"},
        {GaugeLabel::Z_L, "weak (left), SU(2)_L", "M_6/(alpha_w^2 cos theta_w)"},
        {GaugeLabel::X_R, "CP (right) nonconservation, U(1)_R", "M_7/alpha^2"},
        {GaugeLabel::X_L, "CP (left) nonconservation, U(1)_L", "M_8/alpha^2"},
        {GaugeLabel::Z_R, "weak (right), SU(2)_R", "M_9/alpha^2"},
        {GaugeLabel::G, "gravity", "M_10/alpha^2"},
    }};
    return table[d.value() - OrbitalIndex::min];
}

struct BosonRow
{
    OrbitalIndex orbital;
    MassValue mass;
    GaugeLabel gauge_label;
    std::string_view symmetry_label;
};

//! The seven main-orbital bosons, D = 5..11 in order.
class BosonLadder
{
  public:
    using Rows = std::array<BosonRow, 7>;

    explicit BosonLadder(Rows rows) : rows_(rows) {}

    BosonRow const& operator[](OrbitalIndex d) const
    {
        return rows_[d.value() - OrbitalIndex::min];
    }
    MassValue const& mass(int d) const { return (*this)[OrbitalIndex(d)].mass; }

    auto begin() const noexcept { return rows_.begin(); }
    auto end() const noexcept { return rows_.end(); }
    static constexpr std::size_t size() noexcept { return 7; }

  private:
    Rows rows_;
};

/*!
 * Per-step couplings alpha_D for D = 6..11.
 *
 * Step 6 links B_5, F_6 and B_6; step 7 is the electroweak step whose
 * effective coupling alpha_w^2 cos(theta_w) differs from alpha_e^2; steps
 * 8..11 are plain alpha_D^2 divisions.
 */
struct LadderAlphas
{
    std::array<double, 6> steps;

    double at(int d) const
    {
        if (d < 6 || d > 11)
        {
            throw InvalidInput("ladder steps exist for D = 6..11 only");
        }
        return steps[d - 6];
    }

    //! alpha_e everywhere, with the solved alpha_w at D = 7.
    static LadderAlphas defaults(ModelConstants const& c)
    {
        double const a = c.alpha_e();
        return {{a, electroweak_mix(c).alpha_w, a, a, a, a}};
    }
};

namespace detail {
inline BosonLadder assemble(std::array<MassValue, 7> const& masses)
{
    auto row = [&](int d) {
        auto const info = boson_orbital_info(OrbitalIndex(d));
        return BosonRow{OrbitalIndex(d), masses[d - 5], info.gauge, info.symmetry};
    };
    return BosonLadder({row(5), row(6), row(7), row(8), row(9), row(10), row(11)});
}
}  // namespace detail

/*!
 * Table of main-orbital boson masses by recursion.
 *
 * B_5 = alpha M_e and B_6 = M_e / alpha come from the electron; B_7 is
 * anchored to the given Z mass; each higher row divides by alpha_e^2.
 */
inline BosonLadder boson_ladder(ModelConstants const& c)
{
    double const a = c.alpha_e();
    double const a2 = a * a;
    std::array<MassValue, 7> m{c.m_electron() * a,
                               c.m_electron() / a,
                               c.m_z(),
                               c.m_z(),
                               c.m_z(),
                               c.m_z(),
                               c.m_z()};
    for (int i = 3; i < 7; ++i)
    {
        m[i] = m[i - 1] / a2;
    }
    return detail::assemble(m);
}

/*!
 * Ladder with explicit per-step couplings.
 *
 * B_7 is derived from B_6 through the electroweak step rather than anchored,
 * so with \c LadderAlphas::defaults it reproduces M_Z to rounding.
 */
inline BosonLadder boson_ladder(ModelConstants const& c, LadderAlphas const& alphas)
{
    for (double s : alphas.steps)
    {
        if (!(s > 0 && s < 1))
        {
            throw InvalidInput("ladder couplings must be in (0, 1)");
        }
    }
    double const a6 = alphas.at(6);
    double const aw = alphas.at(7);
    double const cos_w = std::cos(deg_to_rad(c.theta_w_deg()));
    std::array<MassValue, 7> m{c.m_electron() * a6,
                               c.m_electron() / a6,
                               c.m_electron(),
                               c.m_electron(),
                               c.m_electron(),
                               c.m_electron(),
                               c.m_electron()};
    m[2] = m[1] / (aw * aw * cos_w);
    for (int d = 8; d <= 11; ++d)
    {
        double const ad = alphas.at(d);
        m[d - 5] = m[d - 6] / (ad * ad);
    }
    return detail::assemble(m);
}

//! Fermion partner of the D-orbital boson: F_D = B_D * alpha_e, D >= 6.
inline MassValue dimensional_fermion_mass(OrbitalIndex d, ModelConstants const& c)
{
    if (d.value() == OrbitalIndex::min)
    {
        throw InvalidInput(
            "no D = 5 dimensional fermion: B_5 is defined through F_6 = M_e");
    }
    return boson_ladder(c)[d].mass * c.alpha_e();
}

}  // namespace dimass
