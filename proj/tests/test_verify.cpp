#include <gtest/gtest.h>

#include <json.hpp>

#include "twoshock/verify.hpp"

using namespace twoshock;

TEST(Report, JsonAndText) {
    Report r;
    r.add({"alpha", true, {{"x", 1.5}}, ""});
    r.add({"beta", false, {{"y", -2.0}}, "note"});
    EXPECT_FALSE(r.passed());
    auto j = nlohmann::json::parse(r.json());
    EXPECT_EQ(j["checks"].size(), 2u);
    EXPECT_EQ(j["checks"][1]["name"], "beta");
    EXPECT_EQ(j["checks"][0]["values"]["x"], 1.5);
    EXPECT_NE(r.text().find("FAIL beta y=-2"), std::string::npos);
    Report ok;
    ok.add({"gamma", true, {}, ""});
    EXPECT_TRUE(ok.passed());
}

TEST(Verify, PoincareSweepDeterministic) {
    Report a = check_poincare_random(99, 200), b = check_poincare_random(99, 200);
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.json(), b.json());
}

TEST(Verify, SweepHasAsymmetricPair) {
    SweepSpec s;
    bool found = false;
    for (auto [a, b] : s.pairs) found |= std::max(a, b) >= 10 * std::min(a, b);
    EXPECT_TRUE(found);
}

TEST(Verify, NegativeControlReportsDesignedFailure) {
    RunConfig c;
    c.T = 200;
    Scenario sc = build_scenario(c);
    auto frames = negative_control_frames(sc, 21);
    Report inner = check_separation_lemmas(frames, sc, "nc");
    for (const auto& r : inner.records()) EXPECT_FALSE(r.passed) << r.name;
    EXPECT_TRUE(check_negative_control(sc).passed());
}

TEST(Verify, ProfileLemmasPass) {
    SweepSpec s;
    Report r = check_lemma_profiles(s);
    EXPECT_TRUE(r.passed()) << r.text();
}
