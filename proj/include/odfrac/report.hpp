/// @file report.hpp
/// @brief Verification report structures and their deterministic JSON form.
///        All floating-point output uses 17 significant digits; key order is
///        insertion order, so identical runs serialize byte-identically.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "odfrac/norms.hpp"

namespace odfrac {

/// Minimal ordered JSON value (number/string/bool/array/object).
struct Json {
    enum class Type { Number, String, Bool, Array, Object };
    Type type = Type::Object;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<Json> arr;
    std::vector<std::pair<std::string, Json>> obj;

    static Json number(double v);
    static Json string(std::string v);
    static Json boolean(bool v);
    static Json array();
    static Json object();

    Json& push(Json v);                       // array append
    Json& set(const std::string& k, Json v);  // object append

    void dump(std::string& out, int indent) const;
    std::string dump() const;
};

/// One measured case inside a suite.
struct CaseRecord {
    std::string id;
    std::vector<std::pair<std::string, double>> numbers;
    bool vacuous = false;
    bool pass = true;
    std::string note;

    CaseRecord& num(const std::string& k, double v) {
        numbers.emplace_back(k, v);
        return *this;
    }
};

/// One named verdict with the measured value and its threshold.
struct CheckRecord {
    std::string name;
    bool pass = true;
    bool vacuous = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<CaseRecord> cases;
    std::vector<std::pair<std::string, double>> fits;
    std::vector<CheckRecord> checks;
    std::vector<NormResult> norm_rows;

    void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
    void param(const std::string& k, double v);
    void fit(const std::string& k, double v) { fits.emplace_back(k, v); }
    CheckRecord& check(const std::string& name, bool pass, double value,
                       double threshold, const std::string& note = "");

    /// All non-vacuous checks pass (vacuous cases are flagged, never counted
    /// as silent passes).
    bool pass() const;

    Json to_json() const;
    std::string to_json_string() const;
    std::string norms_csv() const;
};

}  // namespace odfrac
