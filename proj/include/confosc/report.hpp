#pragma once

#include <json.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "confosc/exact.hpp"

namespace confosc {

// Exact checks carry either nothing (exact zero) or the first offending rational;
// floating checks carry a max-abs error.
struct Residual {
    enum class Kind { ExactZero, ExactNonzero, Float };
    Kind kind = Kind::ExactZero;
    std::string exact;
    double value = 0.0;

    static Residual exact_zero() { return {}; }
    static Residual nonzero(const exact::GaussianRational& z) { return {Kind::ExactNonzero, z.str(), 0.0}; }
    static Residual floating(double v) { return {Kind::Float, {}, v}; }

    bool is_exact_zero() const { return kind == Kind::ExactZero; }

    nlohmann::json to_json() const {
        switch (kind) {
            case Kind::ExactZero: return "exact-zero";
            case Kind::ExactNonzero: return exact;
            case Kind::Float: return value;
        }
        return nullptr;
    }
    std::string str() const {
        if (kind == Kind::Float) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3e", value);
            return buf;
        }
        return kind == Kind::ExactZero ? "exact-zero" : exact;
    }
};

struct VerificationReport {
    std::string check_name;
    nlohmann::json parameters = nlohmann::json::object();
    Residual residual;
    bool pass = true;
    double runtime_ms = 0.0;
    std::vector<std::string> notes;
    nlohmann::json details = nlohmann::json::array();

    void fail(std::string why) {
        pass = false;
        notes.push_back(std::move(why));
    }

    // Keep the first exact failure, or the largest float error.
    void absorb(const Residual& r) {
        if (r.kind == Residual::Kind::Float) {
            if (residual.kind != Residual::Kind::ExactNonzero &&
                (residual.kind != Residual::Kind::Float || r.value > residual.value))
                residual = r;
        } else if (r.kind == Residual::Kind::ExactNonzero && residual.kind != Residual::Kind::ExactNonzero) {
            residual = r;
        }
    }

    nlohmann::json to_json() const {
        return {{"schema", 1},
                {"check", check_name},
                {"parameters", parameters},
                {"residual", residual.to_json()},
                {"pass", pass},
                {"runtime_ms", runtime_ms},
                {"notes", notes},
                {"details", details}};
    }
};

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace confosc
