#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "twoshock/eos.hpp"

using namespace twoshock;

TEST(Pressure, Values) {
    EXPECT_DOUBLE_EQ(pressure(GasLaw(5.0 / 3.0), 1.0), 1.0);
    EXPECT_DOUBLE_EQ(pressure(GasLaw(2.0), 2.0), 0.25);
    EXPECT_NEAR(pressure(GasLaw(5.0 / 3.0), 0.9444), 1.1, 1e-3);
}

TEST(Pressure, Derivatives) {
    EXPECT_DOUBLE_EQ(dpressure(GasLaw(2.0), 1.0), -2.0);
    EXPECT_DOUBLE_EQ(d2pressure(GasLaw(2.0), 1.0), 6.0);
    EXPECT_DOUBLE_EQ(dpressure(GasLaw(5.0 / 3.0), 1.0), -5.0 / 3.0);
    GasLaw law;
    double h = 1e-5, v = 1.3;
    double fd = (pressure(law, v + h) - pressure(law, v - h)) / (2 * h);
    EXPECT_NEAR(dpressure(law, v), fd, 1e-8);
}

TEST(Pressure, InverseRoundTrip) {
    GasLaw law;
    for (double p : {0.3, 1.0, 1.1, 4.0}) EXPECT_NEAR(pressure(law, volume_from_pressure(law, p)), p, 1e-14);
    EXPECT_NEAR(volume_from_pressure(law, 1.1), std::pow(1.1, -0.6), 1e-15);
}

TEST(Pressure, RejectsNonPositiveVolume) {
    GasLaw law;
    EXPECT_THROW(pressure(law, 0.0), DomainError);
    EXPECT_THROW(pressure(law, -1.0), DomainError);
    EXPECT_THROW(GasLaw(1.0), DomainError);
}

TEST(InternalEnergy, Values) {
    EXPECT_DOUBLE_EQ(internal_energy(GasLaw(2.0), 1.0), 1.0);
    EXPECT_DOUBLE_EQ(internal_energy(GasLaw(2.0), 2.0), 0.5);
    GasLaw law;
    double h = 1e-5, v = 1.7;
    double fd = (internal_energy(law, v + h) - internal_energy(law, v - h)) / (2 * h);
    EXPECT_NEAR(fd + pressure(law, v), 0.0, 1e-8);
}

TEST(RelativeQuantities, Values) {
    GasLaw law;
    EXPECT_EQ(rel_pressure(law, 1.3, 1.3), 0.0);
    EXPECT_EQ(rel_internal(law, 1.3, 1.3), 0.0);
    GasLaw g2(2.0);
    EXPECT_DOUBLE_EQ(rel_pressure(g2, 2.0, 1.0), 1.25);
    EXPECT_DOUBLE_EQ(rel_internal(g2, 2.0, 1.0), 0.5);
}

TEST(RelativeQuantities, FastKernelsAgree) {
    GasLaw law;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.2, 3.0);
    for (int k = 0; k < 200; ++k) {
        double v = U(rng), w = U(rng);
        EXPECT_NEAR(rel_internal_fast(law.gamma, v, w), rel_internal(law, v, w), 1e-13);
        EXPECT_NEAR(rel_pressure_fast(law.gamma, v, w), rel_pressure(law, v, w), 1e-12);
    }
}

TEST(RelativeEntropy, Values) {
    GasLaw law;
    EXPECT_EQ(rel_entropy(law, {1.0, 0.0}, {1.0, 0.0}), 0.0);
    EXPECT_DOUBLE_EQ(rel_entropy(GasLaw(2.0), {2.0, 1.0}, {1.0, 0.0}), 1.0);
}
