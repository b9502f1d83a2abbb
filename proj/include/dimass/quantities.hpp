#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"
#include "format.hpp"

namespace dimass {

//---------------------------------------------------------------------------//
// Mass units
//---------------------------------------------------------------------------//

enum class MassUnit
{
    eV,
    keV,
    MeV,
    GeV
};

//! Power of 10^3 relative to eV.
constexpr int kilo_exponent(MassUnit unit) noexcept
{
    switch (unit)
    {
        case MassUnit::eV:
            return 0;
        case MassUnit::keV:
            return 1;
        case MassUnit::MeV:
            return 2;
        case MassUnit::GeV:
            return 3;
    }
    return 0;
}

constexpr std::string_view to_string(MassUnit unit) noexcept
{
    switch (unit)
    {
        case MassUnit::eV:
            return "eV";
        case MassUnit::keV:
            return "keV";
        case MassUnit::MeV:
            return "MeV";
        case MassUnit::GeV:
            return "GeV";
    }
    return "?";
}

inline std::optional<MassUnit> parse_mass_unit(std::string_view text) noexcept
{
    for (auto u : {MassUnit::eV, MassUnit::keV, MassUnit::MeV, MassUnit::GeV})
    {
        if (text == to_string(u))
        {
            return u;
        }
    }
    return std::nullopt;
}

namespace detail {
//! Rescale between units using only exact powers of 1000.
constexpr double rescale(double magnitude, MassUnit from, MassUnit to) noexcept
{
    int steps = kilo_exponent(from) - kilo_exponent(to);
    double factor = 1;
    for (int i = 0; i < (steps < 0 ? -steps : steps); ++i)
    {
        factor *= 1000;
    }
    return steps >= 0 ? magnitude * factor : magnitude / factor;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * A non-negative, finite mass with an explicit unit.
 *
 * Arithmetic normalizes to MeV, the canonical unit. Comparison is by physical
 * value, so 1 GeV == 1000 MeV.
 */
class MassValue
{
  public:
    MassValue(double magnitude, MassUnit unit) : magnitude_(magnitude), unit_(unit)
    {
        if (!std::isfinite(magnitude) || magnitude < 0)
        {
            throw InvalidInput("mass magnitude must be finite and non-negative, got "
                               + format_shortest(magnitude));
        }
    }

    static MassValue mev(double m) { return {m, MassUnit::MeV}; }
    static MassValue gev(double m) { return {m, MassUnit::GeV}; }

    double magnitude() const noexcept { return magnitude_; }
    MassUnit unit() const noexcept { return unit_; }

    //! Magnitude expressed in another unit.
    double in(MassUnit target) const noexcept
    {
        return detail::rescale(magnitude_, unit_, target);
    }
    double in_mev() const noexcept { return in(MassUnit::MeV); }
    double in_gev() const noexcept { return in(MassUnit::GeV); }

    friend MassValue operator+(MassValue const& a, MassValue const& b)
    {
        return mev(a.in_mev() + b.in_mev());
    }
    friend MassValue operator*(double s, MassValue const& m)
    {
        return mev(s * m.in_mev());
    }
    friend MassValue operator*(MassValue const& m, double s) { return s * m; }
    friend MassValue operator/(MassValue const& m, double s)
    {
        return mev(m.in_mev() / s);
    }
    //! Dimensionless ratio of two masses.
    friend double operator/(MassValue const& a, MassValue const& b)
    {
        return a.in_mev() / b.in_mev();
    }

    friend bool operator==(MassValue const& a, MassValue const& b) noexcept
    {
        return a.in_mev() == b.in_mev();
    }
    friend std::partial_ordering
    operator<=>(MassValue const& a, MassValue const& b) noexcept
    {
        return a.in_mev() <=> b.in_mev();
    }

  private:
    double magnitude_;
    MassUnit unit_;
};

//! Same physical mass expressed in the target unit.
inline MassValue convert(MassValue const& value, MassUnit target)
{
    return {value.in(target), target};
}

//! Display unit: MeV for [0.1, 10^4) MeV and zero, GeV above, keV/eV below.
inline MassValue adaptive(MassValue const& value)
{
    double const mev = value.in_mev();
    if (mev == 0 || (mev >= 0.1 && mev < 1e4))
    {
        return convert(value, MassUnit::MeV);
    }
    if (mev >= 1e4)
    {
        return convert(value, MassUnit::GeV);
    }
    return convert(value, value.in(MassUnit::keV) >= 0.1 ? MassUnit::keV : MassUnit::eV);
}

//! |computed - reference| / reference, for plain reals.
inline double relative_error(double computed, double reference)
{
    if (reference == 0)
    {
        throw DataError("undefined relative error: reference is zero");
    }
    return std::abs(computed - reference) / std::abs(reference);
}

//! Unit-independent relative error between two masses.
inline double relative_error(MassValue const& computed, MassValue const& reference)
{
    return relative_error(computed.in_mev(), reference.in_mev());
}

//---------------------------------------------------------------------------//
// Indices
//---------------------------------------------------------------------------//

//! Main dimensional orbital number D (space-time dimension), 5..11.
class OrbitalIndex
{
  public:
    static constexpr int min = 5;
    static constexpr int max = 11;

    explicit constexpr OrbitalIndex(int d) : d_(d)
    {
        if (d < min || d > max)
        {
            throw InvalidInput("orbital index must be in 5..11, got "
                               + std::to_string(d));
        }
    }

    constexpr int value() const noexcept { return d_; }
    friend constexpr auto operator<=>(OrbitalIndex, OrbitalIndex) = default;

  private:
    int d_;
};

//! Auxiliary dimensional orbital number a, 0..5.
class AuxIndex
{
  public:
    static constexpr int min = 0;
    static constexpr int max = 5;

    explicit constexpr AuxIndex(int a) : a_(a)
    {
        if (a < min || a > max)
        {
            throw InvalidInput("auxiliary index must be in 0..5, got "
                               + std::to_string(a));
        }
    }

    constexpr int value() const noexcept { return a_; }
    friend constexpr auto operator<=>(AuxIndex, AuxIndex) = default;

  private:
    int a_;
};

//---------------------------------------------------------------------------//
/*!
 * Inputs that parameterize the whole model.
 *
 * Defaults: CODATA fine-structure constant, a 4-digit electron mass (needed
 * to reproduce the printed muon and tau), the Z mass, a 29.69 degree mixing
 * angle and a 1.2e19 GeV Planck reference. Construction validates every
 * field; use the \c with_* helpers to derive modified copies.
 */
class ModelConstants
{
  public:
    static constexpr double default_alpha_e = 7.2973525693e-3;
    static constexpr double default_m_electron_mev = 0.510999;
    static constexpr double default_m_z_gev = 91.177;
    static constexpr double default_theta_w_deg = 29.69;
    static constexpr double default_planck_gev = 1.2e19;
    static constexpr int required_orbitals = 7;

    ModelConstants()
        : ModelConstants(default_alpha_e,
                         MassValue::mev(default_m_electron_mev),
                         MassValue::gev(default_m_z_gev),
                         default_theta_w_deg,
                         MassValue::gev(default_planck_gev))
    {
    }

    ModelConstants(double alpha_e,
                   MassValue m_electron,
                   MassValue m_z,
                   double theta_w_deg,
                   MassValue planck_ref,
                   int n_orbitals = required_orbitals)
        : alpha_e_(alpha_e)
        , m_electron_(m_electron)
        , m_z_(m_z)
        , theta_w_deg_(theta_w_deg)
        , planck_ref_(planck_ref)
        , n_orbitals_(n_orbitals)
    {
        if (!(alpha_e > 0 && alpha_e < 1))
        {
            throw InvalidInput("alpha_e must be in (0, 1), got "
                               + format_shortest(alpha_e));
        }
        if (!(m_electron.in_mev() > 0))
        {
            throw InvalidInput("electron mass must be positive");
        }
        if (!(m_z.in_mev() > 0))
        {
            throw InvalidInput("Z mass must be positive");
        }
        if (!(planck_ref.in_mev() > 0))
        {
            throw InvalidInput("Planck reference mass must be positive");
        }
        if (!(theta_w_deg > 0 && theta_w_deg < 90))
        {
            throw InvalidInput("theta_w must be in (0, 90) degrees, got "
                               + format_shortest(theta_w_deg));
        }
        if (n_orbitals != required_orbitals)
        {
            throw InvalidInput("the model has exactly 7 main orbitals, got "
                               + std::to_string(n_orbitals));
        }
    }

    double alpha_e() const noexcept { return alpha_e_; }
    MassValue const& m_electron() const noexcept { return m_electron_; }
    MassValue const& m_z() const noexcept { return m_z_; }
    double theta_w_deg() const noexcept { return theta_w_deg_; }
    MassValue const& planck_ref() const noexcept { return planck_ref_; }
    int n_orbitals() const noexcept { return n_orbitals_; }

    ModelConstants with_alpha_e(double v) const
    {
        return {v, m_electron_, m_z_, theta_w_deg_, planck_ref_, n_orbitals_};
    }
    ModelConstants with_m_electron(MassValue v) const
    {
        return {alpha_e_, v, m_z_, theta_w_deg_, planck_ref_, n_orbitals_};
    }
    ModelConstants with_m_z(MassValue v) const
    {
        return {alpha_e_, m_electron_, v, theta_w_deg_, planck_ref_, n_orbitals_};
    }
    ModelConstants with_theta_w_deg(double v) const
    {
        return {alpha_e_, m_electron_, m_z_, v, planck_ref_, n_orbitals_};
    }
    ModelConstants with_planck_ref(MassValue v) const
    {
        return {alpha_e_, m_electron_, m_z_, theta_w_deg_, v, n_orbitals_};
    }

  private:
    double alpha_e_;
    MassValue m_electron_;
    MassValue m_z_;
    double theta_w_deg_;
    MassValue planck_ref_;
    int n_orbitals_;
};

}  // namespace dimass
