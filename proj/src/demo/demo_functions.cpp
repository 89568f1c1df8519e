// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/demo.hpp"

#include "fnkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace fnkit {

namespace {

constexpr const char* kSpeed = "Vehicle.Speed";
constexpr const char* kLongitudinal = "Vehicle.Acceleration.Longitudinal";
constexpr const char* kSetSpeed = "Vehicle.ADAS.CruiseControl.SpeedSet";
constexpr const char* kEngaged = "Vehicle.ADAS.CruiseControl.IsActive";
constexpr const char* kLeadDistance = "Vehicle.ADAS.ACC.LeadVehicle.Distance";
constexpr const char* kCurvature = "Vehicle.ADAS.LaneDetection.Curvature";
constexpr const char* kEcoRequest = "Vehicle.ADAS.EcoControl.AccelerationRequest";
constexpr const char* kEcoStatus = "Vehicle.ADAS.EcoControl.Status";
constexpr const char* kAccRequest = "Vehicle.ADAS.ACC.AccelerationRequest";
constexpr const char* kAccStatus = "Vehicle.ADAS.ACC.Status";
constexpr const char* kAltitude = "Vehicle.CurrentLocation.Altitude";
constexpr const char* kProfile = "Vehicle.ADAS.EcoControl.Horizon.AltitudeProfile";

float clampf(float v, float lo, float hi) { return std::min(std::max(v, lo), hi); }

template <typename T>
void read(const SignalValues& in, const char* path, T& target) {
    auto it = in.find(path);
    if (it != in.end()) target = it->second.get<T>();
}

}  // namespace

void CoreAccFunction::init() {
    *this = CoreAccFunction{};
    initialized_ = true;
    status_ = 1;
}

void CoreAccFunction::terminate() {
    initialized_ = false;
    acceleration_ = 0.0F;
    status_ = 0;
}

void CoreAccFunction::set_external_inputs(const SignalValues& in) {
    read(in, kSpeed, speed_kph_);
    read(in, kLongitudinal, longitudinal_);
    read(in, kSetSpeed, set_speed_kph_);
    read(in, kEngaged, engaged_);
    read(in, kLeadDistance, lead_distance_);
    read(in, kCurvature, curvature_);
    read(in, kEcoRequest, eco_request_);
}

void CoreAccFunction::step() {
    if (!initialized_) return;
    const float v = speed_kph_ / 3.6F;
    float target = 0.0F;
    std::int64_t status = 1;
    if (engaged_) {
        target = clampf(0.4F * (set_speed_kph_ - speed_kph_) / 3.6F, -2.0F, 1.5F) + 0.5F * eco_request_;
        status = 2;
        const float gap = 5.0F + 1.8F * v;
        const float distance_term = clampf(0.2F * (lead_distance_ - gap), -5.0F, 3.0F);
        if (distance_term < target) {
            target = distance_term;
            status = 3;
        }
        const float k = std::fabs(curvature_);
        if (k > 1.0e-4F) {
            const float v_max = std::sqrt(2.0F / k);
            const float curve_term = clampf(0.5F * (v_max - v), -3.0F, 3.0F);
            if (curve_term < target) {
                target = curve_term;
                status = 4;
            }
        }
    }
    // Jerk limit: at most 0.25 m/s^2 change per 50 ms cycle.
    acceleration_ = clampf(acceleration_ + clampf(target - acceleration_, -0.25F, 0.25F), -5.0F, 3.0F);
    status_ = status;
    implausible_ = engaged_ && lead_distance_ < 2.0F;
}

SignalValues CoreAccFunction::get_external_outputs() const {
    return {{kAccRequest, static_cast<double>(acceleration_)}, {kAccStatus, status_}};
}

std::map<std::string, bool> CoreAccFunction::error_conditions() const {
    return {{"CoreAcc_Plausibility_ErrorSts", implausible_}};
}

void EcoMpcFunction::init() {
    *this = EcoMpcFunction{};
    initialized_ = true;
}

void EcoMpcFunction::terminate() {
    initialized_ = false;
    acceleration_ = 0.0F;
    status_ = 0;
}

void EcoMpcFunction::set_external_inputs(const SignalValues& in) {
    read(in, kSpeed, speed_kph_);
    read(in, kAltitude, altitude_);
    auto it = in.find(kProfile);
    if (it != in.end()) {
        for (std::size_t i = 0; i < profile_.size() && i < it->second.size(); ++i) {
            profile_[i] = it->second[i].get<float>();
        }
    }
}

void EcoMpcFunction::step() {
    checkpoints_.clear();
    if (!initialized_) return;
    checkpoints_.push_back("ReadProfile");
    float grade = 0.0F;
    for (std::size_t i = 0; i < profile_.size(); ++i) {
        const float distance = 100.0F * static_cast<float>(i + 1);
        grade += (profile_[i] - static_cast<float>(altitude_)) / distance;
    }
    grade /= static_cast<float>(profile_.size());
    checkpoints_.push_back("Optimize");
    if (speed_kph_ / 3.6F < 2.0F) {
        acceleration_ = 0.0F;
        status_ = 0;
    } else {
        acceleration_ = clampf(-9.81F * grade * 0.6F, -3.0F, 2.0F);
        status_ = std::fabs(grade) > 0.04F ? 2 : 1;
    }
    checkpoints_.push_back("Publish");
}

SignalValues EcoMpcFunction::get_external_outputs() const {
    return {{kEcoRequest, static_cast<double>(acceleration_)}, {kEcoStatus, status_}};
}

std::shared_ptr<PlatformFunction> make_demo_function(const std::string& function_name) {
    if (function_name == "CoreAcc") return std::make_shared<CoreAccFunction>();
    if (function_name == "EcoMpc") return std::make_shared<EcoMpcFunction>();
    throw Error(ErrorKind::kInvalidArgument, "no demo implementation for function " + function_name);
}

const std::vector<std::string>& demo_equivalence_events() {
    static const std::vector<std::string> events = {kAccStatus, kAccRequest};
    return events;
}

}  // namespace fnkit
