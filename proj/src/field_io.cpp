#include "wavediv/field_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace wavediv {

nlohmann::ordered_json exponent_to_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

double exponent_from_json(const nlohmann::json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kInf;
        throw std::runtime_error("field_io: exponent string must be \"inf\"");
    }
    return v.get<double>();
}

nlohmann::ordered_json field_to_json(const CoefficientField& field,
                                     const nlohmann::ordered_json* meta) {
    nlohmann::ordered_json doc;
    doc["d"] = field.dim();
    doc["Jmax"] = field.jmax();
    doc["s"] = field.besov().s;
    doc["p"] = exponent_to_json(field.besov().p);
    doc["q"] = exponent_to_json(field.besov().q);
    auto entries = nlohmann::ordered_json::array();
    field.for_each([&](int j, const FieldEntry& e) {
        if (e.v == 0.0) return;
        nlohmann::ordered_json item;
        item["i"] = e.i;
        item["j"] = j;
        item["k"] = e.k;
        item["v"] = e.v;
        entries.push_back(std::move(item));
    });
    doc["entries"] = std::move(entries);
    if (meta != nullptr) doc["meta"] = *meta;
    return doc;
}

CoefficientField field_from_json(const nlohmann::json& doc) {
    const int d = doc.at("d").get<int>();
    const int jmax = doc.at("Jmax").get<int>();
    BesovParams params;
    params.d = d;
    params.s = doc.at("s").get<double>();
    params.p = exponent_from_json(doc.at("p"));
    params.q = exponent_from_json(doc.at("q"));

    FieldBuilder builder(d, jmax, params);
    std::set<std::tuple<int, int, Pos>> seen;
    for (const auto& item : doc.at("entries")) {
        const int i = item.at("i").get<int>();
        const int j = item.at("j").get<int>();
        Pos k = item.at("k").get<Pos>();
        if (static_cast<int>(k.size()) != d)
            throw std::runtime_error("field_io: entry position length != d");
        if (!seen.insert({i, j, k}).second) {
            std::ostringstream msg;
            msg << "field_io: duplicate index (i=" << i << ", j=" << j << ")";
            throw std::runtime_error(msg.str());
        }
        builder.add(i, DyadicCube{j, std::move(k)}, item.at("v").get<double>());
    }
    return std::move(builder).build();
}

void write_field(std::ostream& os, const CoefficientField& field,
                 const nlohmann::ordered_json* meta) {
    os << field_to_json(field, meta).dump(1) << '\n';
}

CoefficientField read_field(std::istream& is) {
    nlohmann::json doc;
    is >> doc;
    return field_from_json(doc);
}

CoefficientField read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("field_io: cannot open " + path);
    return read_field(in);
}

void write_field_file(const std::string& path, const CoefficientField& field,
                      const nlohmann::ordered_json* meta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("field_io: cannot write " + path);
    write_field(out, field, meta);
}

}  // namespace wavediv
