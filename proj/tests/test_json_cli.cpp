#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mft/json_io.hpp"

using namespace mft;

TEST_CASE("free energy json carries exact strings") {
    json j = to_json(free_energy(2, FreeEnergyRoute::laplacian));
    CHECK(j["genus"] == 2);
    CHECK(j["two_lambda_exp"] == 4);
    bool found = false;
    for (const auto& t : j["poly"]["terms"])
        if (t["c"] == "-21/160") found = true;
    CHECK(found);
    json j1 = to_json(free_energy(1, FreeEnergyRoute::annihilate));
    CHECK(j1["log_token"] == true);
}

TEST_CASE("intersection keys") {
    IntersectionTable t = intersection_numbers(3);
    json j = to_json(t);
    CHECK(j["entries"][0]["key"] == "k2=6");
    CHECK(j["entries"][0]["value"] == "1225/144");
    bool tau7 = false;
    for (const auto& e : j["entries"])
        if (e["key"] == "k7=1" && e["value"] == "1/82944") tau7 = true;
    CHECK(tau7);
}

TEST_CASE("monomial schema") {
    auto monos = expand_planar(4);
    json j = to_json(monos[0]);
    CHECK(j.contains("sign"));
    CHECK(j["chords"].is_array());
    CHECK(j["threads"][0].contains("pair"));
    CHECK(j["threads"][0].contains("parity"));
}

TEST_CASE("spectrum round trip is byte identical") {
    Spectrum s;
    s.eigenvalues = {0.5, 1.25, 3.5};
    s.multiplicities = {2, 1, 4};
    s.V = 7;
    s.lambda = 0.25;
    json j = spectrum_to_json(s);
    Spectrum back = spectrum_from_json(j);
    CHECK(spectrum_to_json(back).dump() == j.dump());
}

TEST_CASE("spectrum schema rejections") {
    json bad = {{"eigenvalues", {1.0, 1.0}}, {"multiplicities", {1.0, 1.0}}, {"V", 2.0}};
    CHECK_THROWS_AS(spectrum_from_json(bad), DomainError);
    json missing = {{"eigenvalues", {1.0}}};
    CHECK_THROWS_AS(spectrum_from_json(missing), DomainError);
    json nonasc = {{"eigenvalues", {2.0, 1.0}}, {"multiplicities", {1.0, 1.0}}, {"V", 2.0}};
    CHECK_THROWS_AS(spectrum_from_json(nonasc), DomainError);
    CHECK_THROWS_AS(load_spectrum("/nonexistent/path.json"), DomainError);
}

TEST_CASE("single eigenvalue fixture") {
    json j = {{"eigenvalues", {0.5}}, {"multiplicities", {4.0}}, {"V", 4.0}, {"lambda", 1.0}};
    Spectrum s = spectrum_from_json(j);
    CHECK(s.size() == 1);
    CHECK(s.lambda == 1.0);
}
