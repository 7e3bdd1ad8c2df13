#include "odfrac/report.hpp"

#include <cstdio>
#include <limits>

#include "odfrac/field_io.hpp"

namespace odfrac {

Json Json::number(double v) {
    Json j;
    j.type = Type::Number;
    j.num = v;
    return j;
}

Json Json::string(std::string v) {
    Json j;
    j.type = Type::String;
    j.str = std::move(v);
    return j;
}

Json Json::boolean(bool v) {
    Json j;
    j.type = Type::Bool;
    j.flag = v;
    return j;
}

Json Json::array() {
    Json j;
    j.type = Type::Array;
    return j;
}

Json Json::object() {
    Json j;
    j.type = Type::Object;
    return j;
}

Json& Json::push(Json v) {
    arr.push_back(std::move(v));
    return *this;
}

Json& Json::set(const std::string& k, Json v) {
    obj.emplace_back(k, std::move(v));
    return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void pad(std::string& out, int indent) { out.append(indent, ' '); }

}  // namespace

void Json::dump(std::string& out, int indent) const {
    switch (type) {
        case Type::Number: {
            double v = num;
            if (v != v) {
                out += "\"nan\"";
            } else if (v == std::numeric_limits<double>::infinity()) {
                out += "\"inf\"";
            } else if (v == -std::numeric_limits<double>::infinity()) {
                out += "\"-inf\"";
            } else {
                out += format_double(v);
            }
            break;
        }
        case Type::String:
            escape_into(out, str);
            break;
        case Type::Bool:
            out += flag ? "true" : "false";
            break;
        case Type::Array: {
            if (arr.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < arr.size(); ++i) {
                pad(out, indent + 2);
                arr[i].dump(out, indent + 2);
                if (i + 1 < arr.size()) out += ',';
                out += '\n';
            }
            pad(out, indent);
            out += ']';
            break;
        }
        case Type::Object: {
            if (obj.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < obj.size(); ++i) {
                pad(out, indent + 2);
                escape_into(out, obj[i].first);
                out += ": ";
                obj[i].second.dump(out, indent + 2);
                if (i + 1 < obj.size()) out += ',';
                out += '\n';
            }
            pad(out, indent);
            out += '}';
            break;
        }
    }
}

std::string Json::dump() const {
    std::string out;
    dump(out, 0);
    out += '\n';
    return out;
}

void VerificationReport::param(const std::string& k, double v) {
    params.emplace_back(k, format_double(v));
}

CheckRecord& VerificationReport::check(const std::string& name, bool ok, double value,
                                       double threshold, const std::string& note) {
    CheckRecord c;
    c.name = name;
    c.pass = ok;
    c.value = value;
    c.threshold = threshold;
    c.note = note;
    checks.push_back(std::move(c));
    return checks.back();
}

bool VerificationReport::pass() const {
    for (const CaseRecord& c : cases)
        if (!c.vacuous && !c.pass) return false;
    for (const CheckRecord& c : checks)
        if (!c.vacuous && !c.pass) return false;
    return true;
}

Json VerificationReport::to_json() const {
    Json root = Json::object();
    root.set("suite", Json::string(suite));
    Json p = Json::object();
    for (const auto& [k, v] : params) p.set(k, Json::string(v));
    root.set("params", std::move(p));
    Json cs = Json::array();
    for (const CaseRecord& c : cases) {
        Json jc = Json::object();
        jc.set("id", Json::string(c.id));
        for (const auto& [k, v] : c.numbers) jc.set(k, Json::number(v));
        jc.set("vacuous", Json::boolean(c.vacuous));
        jc.set("pass", Json::boolean(c.pass));
        if (!c.note.empty()) jc.set("note", Json::string(c.note));
        cs.push(std::move(jc));
    }
    root.set("cases", std::move(cs));
    Json f = Json::object();
    for (const auto& [k, v] : fits) f.set(k, Json::number(v));
    root.set("fits", std::move(f));
    Json ck = Json::array();
    for (const CheckRecord& c : checks) {
        Json jc = Json::object();
        jc.set("name", Json::string(c.name));
        jc.set("pass", Json::boolean(c.pass));
        if (c.vacuous) jc.set("vacuous", Json::boolean(true));
        jc.set("value", Json::number(c.value));
        jc.set("threshold", Json::number(c.threshold));
        if (!c.note.empty()) jc.set("note", Json::string(c.note));
        ck.push(std::move(jc));
    }
    root.set("checks", std::move(ck));
    root.set("verdict", Json::string(pass() ? "pass" : "fail"));
    return root;
}

std::string VerificationReport::to_json_string() const { return to_json().dump(); }

std::string VerificationReport::norms_csv() const {
    std::string out = "kind,s,p,q,n,N,L,value\n";
    for (const NormResult& r : norm_rows) {
        out += r.csv_row();
        out += '\n';
    }
    return out;
}

}  // namespace odfrac
