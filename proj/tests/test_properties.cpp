// Property tests: seeded random generators over the model's algebraic
// identities and the text formats' round trips.

#include <dimass/dimass.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace dimass {
namespace {

constexpr int trials = 500;
constexpr double exact_tol = 1e-12;

class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    double log_uniform(double lo, double hi)
    {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }
    bool coin() { return integer(0, 1) == 1; }
    MassUnit unit() { return static_cast<MassUnit>(integer(0, 3)); }

    ModelConstants constants()
    {
        return ModelConstants(log_uniform(1e-3, 0.05),
                              MassValue(log_uniform(0.05, 5), MassUnit::MeV),
                              MassValue(log_uniform(10, 500), MassUnit::GeV),
                              uniform(1, 89),
                              MassValue(log_uniform(1e18, 1e20), MassUnit::GeV));
    }

    std::string word(int min_len, int max_len)
    {
        static constexpr char chars[] = "abcdefghijklmnopqrstuvwxyz0123456789_ ";
        std::string s;
        int const n = integer(min_len, max_len);
        for (int i = 0; i < n; ++i)
            s += chars[integer(0, sizeof(chars) - 2)];
        return s;
    }

    double any_finite()
    {
        double v = log_uniform(1e-300, 1e300);
        return coin() ? v : -v;
    }

  private:
    std::mt19937_64 rng_;
};

//---------------------------------------------------------------------------//
// Units
//---------------------------------------------------------------------------//

TEST(QuantityProperties, conversion_chains_invert)
{
    Gen g(1);
    for (int i = 0; i < trials; ++i)
    {
        MassValue const start(g.log_uniform(1e-10, 1e25), g.unit());
        MassValue v = start;
        int const hops = g.integer(1, 4);
        for (int h = 0; h < hops; ++h)
            v = convert(v, g.unit());
        v = convert(v, start.unit());
        EXPECT_REL(v.magnitude(), start.magnitude(), exact_tol);
    }
}

TEST(QuantityProperties, relative_error_is_unit_independent)
{
    Gen g(2);
    for (int i = 0; i < trials; ++i)
    {
        MassValue const a(g.log_uniform(1e-3, 1e6), MassUnit::MeV);
        MassValue const b(g.log_uniform(1e-3, 1e6), MassUnit::MeV);
        double const in_mev = relative_error(a, b);
        double const in_gev =
            relative_error(convert(a, MassUnit::GeV), convert(b, MassUnit::GeV));
        double const mixed = relative_error(convert(a, g.unit()), convert(b, g.unit()));
        EXPECT_REL(in_gev, in_mev, exact_tol);
        EXPECT_REL(mixed, in_mev, exact_tol);
    }
}

TEST(QuantityProperties, constants_reject_boundaries)
{
    ModelConstants const c;
    double const bad_alpha[] = {0, 1, -1e-300, 1 + 1e-15, -0.5, 2, std::nan("")};
    for (double a : bad_alpha)
        EXPECT_THROW(c.with_alpha_e(a), InvalidInput) << a;
    double const bad_theta[] = {0, 90, -1e-12, 90 + 1e-12, 180, -45};
    for (double t : bad_theta)
        EXPECT_THROW(c.with_theta_w_deg(t), InvalidInput) << t;
    for (int n : {0, 6, 8, 11, -7})
        EXPECT_THROW(ModelConstants(c.alpha_e(), c.m_electron(), c.m_z(),
                                    c.theta_w_deg(), c.planck_ref(), n),
                     InvalidInput);
    EXPECT_THROW(c.with_m_electron(MassValue::mev(0)), InvalidInput);
    EXPECT_THROW(c.with_m_z(MassValue::gev(0)), InvalidInput);
    EXPECT_THROW(c.with_planck_ref(MassValue::gev(0)), InvalidInput);

    Gen g(3);
    for (int i = 0; i < trials; ++i)
        EXPECT_NO_THROW(g.constants());
}

//---------------------------------------------------------------------------//
// Boson ladder
//---------------------------------------------------------------------------//

TEST(LadderProperties, geometric_ratio_and_cross_product)
{
    Gen g(4);
    for (int i = 0; i < trials; ++i)
    {
        auto const c = g.constants();
        auto const ladder = boson_ladder(c);
        double const inv_a2 = 1 / (c.alpha_e() * c.alpha_e());
        for (int d = 8; d <= 11; ++d)
            EXPECT_REL(ladder.mass(d) / ladder.mass(d - 1), inv_a2, exact_tol);
        double const me = c.m_electron().in_mev();
        EXPECT_REL(ladder.mass(5).in_mev() * ladder.mass(6).in_mev(), me * me, exact_tol);
        EXPECT_EQ(c.m_z(), ladder.mass(7));
    }
}

TEST(LadderProperties, electroweak_reconstruction)
{
    Gen g(5);
    for (int i = 0; i < trials; ++i)
    {
        auto const c = g.constants();
        auto const mix = electroweak_mix(c);
        double const b6 = mix.alpha_w * mix.alpha_w
                          * std::cos(deg_to_rad(mix.theta_w_deg)) * c.m_z().in_mev();
        EXPECT_REL(b6, b6_mass(c).in_mev(), 1e-9);
        double const s = std::sin(deg_to_rad(c.theta_w_deg()));
        EXPECT_EQ(s * s, mix.sin2_theta_w);
    }
}

TEST(LadderProperties, quartic_closed_form_matches_loop)
{
    unsigned __int128 loop = 0;
    for (unsigned __int128 a = 0; a <= 10000; ++a)
    {
        loop += a * a * a * a;
        ASSERT_TRUE(loop == quartic_sum<unsigned __int128>(a))
            << "a=" << static_cast<std::uint64_t>(a);
    }
    std::uint64_t loop64 = 0;
    for (std::uint64_t a = 0; a <= 1500; ++a)
    {
        loop64 += a * a * a * a;
        ASSERT_EQ(loop64, quartic_sum(a));
    }
}

TEST(LadderProperties, electron_scaling_splits_the_ladder)
{
    Gen g(6);
    for (int i = 0; i < trials; ++i)
    {
        auto const c = g.constants();
        double const lambda = g.log_uniform(0.01, 100);
        auto const scaled = c.with_m_electron(c.m_electron() * lambda);
        auto const a = boson_ladder(c);
        auto const b = boson_ladder(scaled);
        EXPECT_REL(b.mass(5).in_mev(), lambda * a.mass(5).in_mev(), exact_tol);
        EXPECT_REL(b.mass(6).in_mev(), lambda * a.mass(6).in_mev(), exact_tol);
        for (int d = 7; d <= 11; ++d)
            EXPECT_EQ(a.mass(d), b.mass(d));
    }
}

//---------------------------------------------------------------------------//
// Fermion spectrum
//---------------------------------------------------------------------------//

TEST(SpectrumProperties, mass_differences)
{
    Gen g(7);
    for (int i = 0; i < trials; ++i)
    {
        auto const c = g.constants();
        MassValue const qb(g.log_uniform(1, 100), MassUnit::MeV);
        MassValue const lump(g.log_uniform(1, 1e3), MassUnit::GeV);
        AuxBaseSet const bases(c, qb, lump);
        auto m = [&](char const* k) {
            return fermion_mass(find_fermion(k).composition, bases, c).in_mev();
        };
        double const me = c.m_electron().in_mev();
        EXPECT_REL(m("d") - m("u"), 3 * me, exact_tol);
        EXPECT_REL(m("tau") - m("mu"), 24 * b6_mass(c).in_mev(), exact_tol);
        EXPECT_REL(m("s") - m("d"), 16 * qb.in_mev(), exact_tol);
        EXPECT_EQ(0, m("nu_e"));
        EXPECT_EQ(0, m("nu_mu"));
        EXPECT_EQ(0, m("nu_tau"));
    }
}

TEST(SpectrumProperties, leptons_homogeneous_in_electron_mass)
{
    Gen g(8);
    for (int i = 0; i < trials; ++i)
    {
        auto const c = g.constants();
        double const lambda = g.log_uniform(0.01, 100);
        auto const scaled = c.with_m_electron(c.m_electron() * lambda);
        for (auto const& row : fermion_table())
        {
            if (row.composition.family != Family::Lepton)
                continue;
            double const a = fermion_mass(row.composition, AuxBaseSet(c), c).in_mev();
            double const b =
                fermion_mass(row.composition, AuxBaseSet(scaled), scaled).in_mev();
            EXPECT_REL(b, lambda * a, exact_tol) << row.composition.name;
        }
    }
}

TEST(SpectrumProperties, deterministic)
{
    Gen g(9);
    for (int i = 0; i < 50; ++i)
    {
        auto const c = g.constants();
        AuxBaseSet const bases(c, MassValue::mev(14), MassValue::gev(160));
        auto const a = full_spectrum(c, bases);
        auto const b = full_spectrum(c, bases);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            EXPECT_EQ(a[k].mass.in_mev(), b[k].mass.in_mev());
    }
}

TEST(SpectrumProperties, single_anchor_solve_is_exact)
{
    Gen g(10);
    ModelConstants const c;
    for (int i = 0; i < 50; ++i)
    {
        // Choose anchors at random; each anchor reproduces its own row.
        std::string const key = std::string(1, "udscb"[g.integer(0, 4)]);
        std::string const a[] = {key};
        auto const result = calibrate(c, a);
        for (auto const& r : result.residuals)
            EXPECT_LT(r.rel_error, exact_tol) << key << " " << r.name;
    }
}

//---------------------------------------------------------------------------//
// Text formats
//---------------------------------------------------------------------------//

TEST(FormatProperties, calibration_file_round_trip)
{
    Gen g(11);
    for (int i = 0; i < trials; ++i)
    {
        CalibrationFile const cal{g.log_uniform(1e-3, 1e6), g.log_uniform(1e-3, 1e6)};
        auto const text = write_calibration(cal);
        auto const back = read_calibration(text);
        EXPECT_EQ(cal, back);
        EXPECT_EQ(text, write_calibration(back));
    }
}

TEST(FormatProperties, observed_csv_round_trip)
{
    Gen g(12);
    for (int i = 0; i < 200; ++i)
    {
        std::vector<ObservedRecord> records;
        std::set<std::string> names;
        int const n = g.integer(0, 12);
        while (static_cast<int>(records.size()) < n)
        {
            std::string name = "q" + g.word(0, 10);
            if (!names.insert(name).second)
                continue;
            ObservedRecord r{name, g.any_finite(), static_cast<ObservedUnit>(g.integer(0, 3)),
                             {}, g.word(0, 20)};
            if (g.coin())
                r.uncertainty = g.coin() ? 0.0 : g.log_uniform(1e-300, 1e300);
            records.push_back(std::move(r));
        }
        auto const text = write_observed(records);
        auto const parsed = parse_observed(text);
        EXPECT_EQ(records, parsed);
        EXPECT_EQ(text, write_observed(parsed));
    }
}

TEST(FormatProperties, compare_total_over_intersection)
{
    ModelConstants const c;
    auto const computed = collect_computed(full_spectrum(c, calibrate(c).bases),
                                           boson_ladder(c),
                                           electroweak_mix(c),
                                           baryon_fractions());
    Gen g(13);
    for (int i = 0; i < 200; ++i)
    {
        std::vector<ObservedRecord> observed;
        std::size_t expected = 0;
        for (auto const& q : computed)
        {
            if (q.value == 0 || !g.coin())
                continue;
            ObservedUnit const u = q.kind == QuantityKind::mass
                                       ? (g.coin() ? ObservedUnit::MeV : ObservedUnit::GeV)
                                   : q.kind == QuantityKind::angle ? ObservedUnit::degree
                                                                   : ObservedUnit::dimensionless;
            observed.push_back({q.name, g.log_uniform(1e-3, 1e3), u, {}, ""});
            ++expected;
        }
        int const extras = g.integer(0, 3);
        for (int k = 0; k < extras; ++k)
            observed.push_back({"extra" + std::to_string(k), 1, ObservedUnit::MeV, {}, ""});
        auto const report = compare_all(computed, observed);
        EXPECT_EQ(expected, report.rows.size());
        EXPECT_EQ(static_cast<std::size_t>(extras), report.observed_only.size());
        EXPECT_EQ(computed.size(), report.rows.size() + report.computed_only.size());
        for (auto const& row : report.rows)
            EXPECT_GE(row.rel_error, 0);
        EXPECT_EQ(render(report, OutputFormat::csv), render(report, OutputFormat::csv));
    }
}

}  // namespace
}  // namespace dimass
