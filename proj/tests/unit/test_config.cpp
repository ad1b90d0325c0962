#include "casimir/config.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace casimir;

namespace {

RunConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

std::string error_of(const std::string& text)
{
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Config, FullExample)
{
    const auto cfg = parse("# trap\n"
                           "omega0 = 229 Hz\n"
                           "a = 2.5 um\n"
                           "R_x = 2.69 µm   # Thomas-Fermi radius\n"
                           "m = 1.443e-25 kg\n"
                           "alpha0 = 4.73e-23 cm3\n"
                           "d_min = 6.5 um\n"
                           "d_max = 11 um\n"
                           "steps = 20\n"
                           "T_S = 605 K\n"
                           "T_E = 310 K\n"
                           "eps0 = 3.81\n"
                           "sigma0 = 1e2 /s\n"
                           "oscillator = 0.5 1e16 rad/s 1e14 rad/s\n"
                           "oscillator = 0.2 2e14 rad/s 0 rad/s\n"
                           "rel_tol = 1e-9\n"
                           "workers = 2\n");
    const TrapConfig trap = cfg.trap();
    EXPECT_DOUBLE_EQ(trap.omega0(), 2.0 * kPi * 229.0);
    EXPECT_DOUBLE_EQ(trap.a(), 2.5e-4);
    EXPECT_DOUBLE_EQ(trap.R_x(), 2.69e-4);
    EXPECT_DOUBLE_EQ(trap.m(), 1.443e-22);
    EXPECT_DOUBLE_EQ(*cfg.d_min, 6.5e-4);
    EXPECT_EQ(*cfg.steps, 20u);
    EXPECT_EQ(*cfg.T_S, 605.0);
    EXPECT_EQ(*cfg.sigma0, 1e2);
    ASSERT_EQ(cfg.oscillators.size(), 2u);
    EXPECT_EQ(cfg.oscillators[1].resonance, 2e14);
    EXPECT_EQ(cfg.settings().rel_tol(), 1e-9);
    EXPECT_EQ(*cfg.workers, 2u);
    EXPECT_EQ(cfg.bare_model().oscillators().size(), 2u);
    EXPECT_FALSE(cfg.bare_model().is_conducting());
}

TEST(Config, EmptyGivesDefaults)
{
    const auto cfg = parse("\n# nothing\n");
    EXPECT_EQ(cfg.trap().a(), TrapConfig{}.a());
    EXPECT_EQ(cfg.bare_model().eps0(), 3.81);
    EXPECT_FALSE(cfg.sigma0.has_value());
}

TEST(Config, Errors)
{
    EXPECT_NE(error_of("colour = blue\n").find("unknown key 'colour'"), std::string::npos);
    EXPECT_NE(error_of("a = 2.5\n").find("unit"), std::string::npos);
    EXPECT_NE(error_of("a = 2.5 K\n").find("not valid"), std::string::npos);
    EXPECT_NE(error_of("a = 2.5 parsec\n").find("parsec"), std::string::npos);
    EXPECT_NE(error_of("eps0 = 3.81 K\n").find("without unit"), std::string::npos);
    EXPECT_NE(error_of("steps = 2.5\n").find("integer"), std::string::npos);
    EXPECT_NE(error_of("a 2.5 um\n").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("\nT_S = -3 K\n").find("T_S"), std::string::npos);
    EXPECT_FALSE(error_of("workers = 0\n").empty());
    EXPECT_FALSE(error_of("a = -2.5 um\n").empty());
    EXPECT_FALSE(error_of("eps0 = 0.5\n").empty());
    EXPECT_FALSE(error_of("sigma0 = -1 /s\n").empty());
    EXPECT_FALSE(error_of("oscillator = 0.5 1e16 rad/s\n").empty());
    EXPECT_FALSE(error_of("rel_tol = 2\n").empty());
    EXPECT_FALSE(error_of("a = nan um\n").empty());
}
