// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/demo.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <random>

namespace fnkit {

namespace {

// Triangle wave in [0, 1000] with the given period (ms).
std::int64_t triangle(std::int64_t t, std::int64_t period) {
    const std::int64_t phase = t % period;
    return std::llabs(2 * phase * 1000 / period - 1000);
}

std::string line(std::int64_t t_ms, const char* path, const nlohmann::json& value) {
    return "{\"t_ms\":" + std::to_string(t_ms) + ",\"path\":\"" + path + "\",\"value\":" + value.dump() + "}\n";
}

double centi(std::int64_t v) { return static_cast<double>(v) / 100.0; }

}  // namespace

std::string demo_trace_jsonl() {
    // minstd_rand is fully specified by the standard, so the noise sequence
    // is identical on every platform.
    std::minstd_rand rng(20260101U);
    auto noise = [&rng](std::int64_t amplitude) {
        return static_cast<std::int64_t>(rng() % static_cast<std::uint32_t>(2 * amplitude + 1)) - amplitude;
    };

    std::string out;
    for (std::int64_t t = 0; t < 60000; t += 50) {
        // Speed drops out for 400 ms to exercise timeout supervision.
        const bool speed_dropout = t > 30000 && t < 30400;
        const std::int64_t speed = 6000 + 3 * triangle(t, 40000) + noise(30);
        if (!speed_dropout) out += line(t, "Vehicle.Speed", centi(speed));
        out += line(t, "Vehicle.Acceleration.Longitudinal", centi(noise(60)));
        if (t % 100 != 0) continue;

        const std::int64_t set_speed = t < 20000 ? 8000 : (t < 40000 ? 10000 : 7000);
        out += line(t, "Vehicle.ADAS.CruiseControl.SpeedSet", centi(set_speed));
        const bool engaged = t >= 2000 && !(t >= 50000 && t < 52000);
        out += line(t, "Vehicle.ADAS.CruiseControl.IsActive", engaged);

        std::int64_t distance = 25000;
        if (t >= 15000 && t < 35000) distance = 4000 + 3 * triangle(t, 10000) + noise(20);
        if (t >= 36000 && t < 36500) distance = 150;
        out += line(t, "Vehicle.ADAS.ACC.LeadVehicle.Distance", centi(distance));

        const std::int64_t curvature = (t >= 45000 && t < 50000) ? 40 : noise(2);
        out += line(t, "Vehicle.ADAS.LaneDetection.Curvature", static_cast<double>(curvature) / 10000.0);

        const std::int64_t altitude = 30000 + 5 * triangle(t, 30000);
        const std::int64_t grade_milli = triangle(t, 20000) / 10 - 50;
        out += line(t, "Vehicle.CurrentLocation.Altitude", centi(altitude));
        nlohmann::json profile = nlohmann::json::array();
        for (std::int64_t i = 1; i <= 5; ++i) profile.push_back(centi(altitude + grade_milli * i * 10));
        out += line(t, "Vehicle.ADAS.EcoControl.Horizon.AltitudeProfile", profile);
    }
    return out;
}

}  // namespace fnkit
