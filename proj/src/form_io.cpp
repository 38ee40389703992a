#include "tqf/forms.hpp"

#include "json.hpp"

#include <istream>
#include <ostream>

namespace tqf {

void write_jsonl(std::ostream& out, const std::vector<FormRecord>& records) {
  for (auto& rec : records) {
    nlohmann::ordered_json j;
    j["a"] = rec.form.a;
    j["b"] = rec.form.b;
    j["c"] = rec.form.c;
    j["r"] = rec.form.r;
    j["s"] = rec.form.s;
    j["t"] = rec.form.t;
    j["det_h"] = rec.det_h;
    j["aut"] = rec.aut;
    j["primitive"] = rec.primitive;
    out << j.dump() << '\n';
  }
}

std::vector<FormRecord> read_jsonl(std::istream& in) {
  std::vector<FormRecord> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) { return FormIoError("line " + std::to_string(line_no) + ": " + why); };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(std::string("malformed JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw fail("expected an object");
    auto integer = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_number_integer()) throw fail(std::string("missing integer field \"") + key + "\"");
      return j[key].get<long>();
    };
    FormRecord rec;
    rec.form = {integer("a"), integer("b"), integer("c"), integer("r"), integer("s"), integer("t")};
    rec.det_h = integer("det_h");
    rec.aut = integer("aut");
    if (!j.contains("primitive") || !j["primitive"].is_boolean()) throw fail("missing boolean field \"primitive\"");
    rec.primitive = j["primitive"].get<bool>();
    if (!is_positive_definite(rec.form)) throw fail("form is not positive definite");
    if (rec.det_h != hessian_det(rec.form)) throw fail("det_h does not match the coefficients");
    if (rec.aut <= 0 || rec.aut % 2) throw fail("aut must be a positive even integer");
    if (rec.primitive != (rec.form.content() == 1)) throw fail("primitive flag does not match the coefficients");
    out.push_back(rec);
  }
  return out;
}

}  // namespace tqf
