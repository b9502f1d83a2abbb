#include <dimass/boson_ladder.hpp>

#include <cmath>
#include <cstdint>

#include "test_util.hpp"

namespace dimass {
namespace {

// Expected values below come from an independent 30-digit evaluation of the
// recursion with the default constants.
constexpr double b_mev[] = {0.0037289398655597307,
                            70.025258495769471,
                            91177.0,
                            1712200578.195809,
                            32153183587681.789,
                            6.0380029535589847e+17,
                            1.1338684260539057e+22};

std::uint64_t quartic_loop(std::uint64_t a)
{
    std::uint64_t sum = 0;
    for (std::uint64_t k = 1; k <= a; ++k)
        sum += k * k * k * k;
    return sum;
}

TEST(QuarticSumTest, examples)
{
    EXPECT_EQ(0u, quartic_sum<std::uint64_t>(0));
    EXPECT_EQ(17u, quartic_sum<std::uint64_t>(2));
    EXPECT_EQ(quartic_loop(5), quartic_sum<std::uint64_t>(5));
    EXPECT_EQ(979u, quartic_sum<std::uint64_t>(5));
    static_assert(quartic_sum<std::uint32_t>(4) == 354);
}

TEST(QuarticSumTest, overflow_throws)
{
    // 6 a^5 exceeds 2^64 around a = 1900
    EXPECT_NO_THROW(quartic_sum<std::uint64_t>(1500));
    EXPECT_THROW(quartic_sum<std::uint64_t>(5000), InvalidInput);
    EXPECT_NO_THROW(quartic_sum<unsigned __int128>(5000));
}

TEST(QuarticSumTest, wide_matches_loop_at_ten_thousand)
{
    unsigned __int128 loop = 0;
    for (unsigned __int128 k = 1; k <= 10000; ++k)
        loop += k * k * k * k;
    auto const closed = quartic_sum<unsigned __int128>(10000);
    EXPECT_TRUE(loop == closed);
    // 20005000333333333000 does not fit in 64 bits
    unsigned __int128 const expected =
        static_cast<unsigned __int128>(2000500033333333300ull) * 10;
    EXPECT_TRUE(closed == expected);
}

TEST(Eq1MassTest, examples)
{
    ModelConstants c;
    EXPECT_EQ(1.2e19, eq1_mass(OrbitalIndex(11), c).in_gev());
    EXPECT_REL(eq1_mass(OrbitalIndex(10), c).in_mev(), 6.3901625424803174e+17, 1e-12);
    EXPECT_REL(eq1_mass(OrbitalIndex(5), c).in_mev(), 0.00027363093899709819, 1e-12);
    EXPECT_REL(eq1_mass(OrbitalIndex(5), c).in_gev(), 2.7e-7, 0.02);
}

TEST(ElectroweakMixTest, defaults)
{
    auto const mix = electroweak_mix(ModelConstants{});
    EXPECT_REL(mix.alpha_w, 0.029733450237551074, 1e-12);
    EXPECT_REL(mix.alpha_w, 0.02973, 1e-3);
    EXPECT_REL(mix.sin2_theta_w, 0.24532907981033817, 1e-12);
    EXPECT_EQ(29.69, mix.theta_w_deg);
}

TEST(ElectroweakMixTest, small_angle_limit)
{
    ModelConstants const c = ModelConstants{}.with_theta_w_deg(1e-9);
    double const limit = std::sqrt(b6_mass(c) / c.m_z());
    EXPECT_REL(electroweak_mix(c).alpha_w, limit, 1e-12);
}

TEST(ElectroweakMixTest, reconstructs_b6)
{
    ModelConstants c;
    auto const mix = electroweak_mix(c);
    double const b6 = mix.alpha_w * mix.alpha_w * std::cos(deg_to_rad(mix.theta_w_deg))
                      * c.m_z().in_mev();
    EXPECT_REL(b6, c.m_electron().in_mev() / c.alpha_e(), 1e-9);
}

TEST(BosonLadderTest, recursion_values)
{
    auto const ladder = boson_ladder(ModelConstants{});
    int i = 0;
    for (auto const& row : ladder)
    {
        EXPECT_EQ(5 + i, row.orbital.value());
        EXPECT_REL(row.mass.in_mev(), b_mev[i], 1e-12) << "D=" << 5 + i;
        ++i;
    }
    EXPECT_EQ(7, i);
    EXPECT_EQ(91.177, ladder.mass(7).in_gev());
}

TEST(BosonLadderTest, printed_table_values)
{
    auto const ladder = boson_ladder(ModelConstants{});
    EXPECT_REL(ladder.mass(5).in_gev(), 3.7e-6, 0.01);
    EXPECT_REL(ladder.mass(6).in_gev(), 7e-2, 0.01);
    EXPECT_REL(ladder.mass(8).in_gev(), 1.7e6, 0.01);
    EXPECT_REL(ladder.mass(9).in_gev(), 3.2e10, 0.01);
    EXPECT_REL(ladder.mass(10).in_gev(), 6.0e14, 0.01);
    EXPECT_REL(ladder.mass(11).in_gev(), 1.1e19, 0.035);
}

TEST(BosonLadderTest, labels)
{
    auto const ladder = boson_ladder(ModelConstants{});
    GaugeLabel const expected[] = {GaugeLabel::A,
                                   GaugeLabel::Pi_half,
                                   GaugeLabel::Z_L,
                                   GaugeLabel::X_R,
                                   GaugeLabel::X_L,
                                   GaugeLabel::Z_R,
                                   GaugeLabel::G};
    int i = 0;
    for (auto const& row : ladder)
        EXPECT_EQ(expected[i++], row.gauge_label);
    EXPECT_EQ("electromagnetic, U(1)", ladder[OrbitalIndex(5)].symmetry_label);
    EXPECT_EQ("gravity", ladder[OrbitalIndex(11)].symmetry_label);
    EXPECT_EQ("Z_L^0", to_string(GaugeLabel::Z_L));
}

TEST(BosonLadderTest, monotone_and_within_eq1_envelope)
{
    ModelConstants c;
    auto const ladder = boson_ladder(c);
    for (int d = 6; d <= 11; ++d)
        EXPECT_LT(ladder.mass(d - 1), ladder.mass(d));
    for (int d = 5; d <= 11; ++d)
    {
        double const ratio = ladder.mass(d) / eq1_mass(OrbitalIndex(d), c);
        EXPECT_LT(std::max(ratio, 1 / ratio), 15.0) << "D=" << d;
    }
}

TEST(BosonLadderTest, explicit_alphas_match_anchored)
{
    ModelConstants c;
    auto const anchored = boson_ladder(c);
    auto const stepped = boson_ladder(c, LadderAlphas::defaults(c));
    for (int d = 5; d <= 11; ++d)
        EXPECT_REL(stepped.mass(d).in_mev(), anchored.mass(d).in_mev(), 1e-9);

    auto alphas = LadderAlphas::defaults(c);
    alphas.steps[5] = 2 * c.alpha_e();  // D = 11
    auto const changed = boson_ladder(c, alphas);
    EXPECT_REL(changed.mass(11).in_mev(), anchored.mass(11).in_mev() / 4, 1e-9);
    EXPECT_THROW(alphas.at(5), InvalidInput);
    alphas.steps[0] = 1.5;
    EXPECT_THROW(boson_ladder(c, alphas), InvalidInput);
}

TEST(DimensionalFermionTest, examples)
{
    ModelConstants c;
    EXPECT_REL(dimensional_fermion_mass(OrbitalIndex(6), c).in_mev(), 0.510999, 1e-12);
    EXPECT_REL(dimensional_fermion_mass(OrbitalIndex(7), c).in_mev(), 665.3507152110661,
               1e-12);
    EXPECT_REL(dimensional_fermion_mass(OrbitalIndex(11), c).in_mev(),
               8.2742376721126157e+19, 1e-12);
    EXPECT_THROW(dimensional_fermion_mass(OrbitalIndex(5), c), InvalidInput);
}

}  // namespace
}  // namespace dimass
