#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcpurity/aggregation.hpp"
#include "tcpurity/corpus.hpp"
#include "tcpurity/purity_metrics.hpp"
#include "tcpurity/script_policy.hpp"
#include "tcpurity/textnorm.hpp"

namespace py = pybind11;
using namespace tcpurity;

PYBIND11_MODULE(_tcpurity, m) {
    m.doc() = "Character-level script purity scoring";

    py::enum_<script::CharClass>(m, "CharClass")
        .value("HAN_IDEOGRAPH", script::CharClass::HanIdeograph)
        .value("DECIMAL_DIGIT", script::CharClass::DecimalDigit)
        .value("WHITESPACE", script::CharClass::Whitespace)
        .value("CJK_PUNCTUATION", script::CharClass::CjkPunctuation)
        .value("LATIN_LETTER", script::CharClass::LatinLetter)
        .value("OTHER_PUNCTUATION", script::CharClass::OtherPunctuation)
        .value("OTHER_SYMBOL", script::CharClass::OtherSymbol)
        .value("OTHER_LETTER", script::CharClass::OtherLetter)
        .value("CONTROL", script::CharClass::Control);

    py::class_<script::ScriptPolicy>(m, "ScriptPolicy")
        .def_static("paper_strict", &script::ScriptPolicy::paper_strict)
        .def_static("cjk_punct_lenient", &script::ScriptPolicy::cjk_punct_lenient)
        .def_static("from_preset",
                    [](const std::string& name) {
                        auto p = script::ScriptPolicy::from_preset(name);
                        if (!p) throw py::value_error("unknown preset: " + name);
                        return *p;
                    })
        .def_property_readonly("preset_name", &script::ScriptPolicy::preset_name)
        .def_readwrite("cjk_punct_legal", &script::ScriptPolicy::cjk_punct_legal)
        .def_readwrite("ascii_digits_only", &script::ScriptPolicy::ascii_digits_only);

    py::class_<script::CharVerdict>(m, "CharVerdict")
        .def_readonly("codepoint", &script::CharVerdict::codepoint)
        .def_readonly("char_class", &script::CharVerdict::cls)
        .def_readonly("legal", &script::CharVerdict::legal)
        .def_readonly("counted", &script::CharVerdict::counted);

    py::class_<textnorm::NormalizedText>(m, "NormalizedText")
        .def_readonly("text", &textnorm::NormalizedText::text)
        .def_readonly("original_length", &textnorm::NormalizedText::original_length)
        .def_readonly("normalized_length", &textnorm::NormalizedText::normalized_length);

    py::class_<metrics::PurityScore>(m, "PurityScore")
        .def_readonly("olr", &metrics::PurityScore::olr)
        .def_readonly("pass_tc", &metrics::PurityScore::pass_tc)
        .def_readonly("counted_chars", &metrics::PurityScore::counted_chars)
        .def_readonly("illegal_chars", &metrics::PurityScore::illegal_chars)
        .def_readonly("degenerate", &metrics::PurityScore::degenerate)
        .def_property_readonly("class_histogram", [](const metrics::PurityScore& s) {
            py::dict d;
            for (const auto& [cls, n] : s.class_histogram) {
                d[py::str(std::string(script::to_string(cls)))] = n;
            }
            return d;
        });

    py::class_<agg::FamilyStats>(m, "FamilyStats")
        .def(py::init([](std::string family, std::int64_t n, double mean_olr,
                         double pass_rate) {
                 return agg::FamilyStats{std::move(family), n, mean_olr, pass_rate, 0};
             }),
             py::arg("family"), py::arg("n"), py::arg("mean_olr"), py::arg("pass_rate"))
        .def_readonly("family", &agg::FamilyStats::family)
        .def_readonly("n", &agg::FamilyStats::n)
        .def_readonly("mean_olr", &agg::FamilyStats::mean_olr)
        .def_readonly("pass_rate", &agg::FamilyStats::pass_rate);

    m.def("normalize", [](const std::string& raw) { return textnorm::normalize(raw); },
          py::arg("raw"));

    m.def("classify",
          [](std::uint32_t codepoint, const script::ScriptPolicy& policy) {
              if (codepoint > 0x10FFFF ||
                  (codepoint >= 0xD800 && codepoint <= 0xDFFF)) {
                  throw py::value_error("not a Unicode scalar value");
              }
              return script::classify(static_cast<char32_t>(codepoint), policy);
          },
          py::arg("codepoint"), py::arg("policy"));

    m.def("score",
          [](const std::string& text, const script::ScriptPolicy& policy) {
              return metrics::score(text, policy);
          },
          py::arg("text"), py::arg("policy"));

    m.def("macro_micro", [](const std::vector<agg::FamilyStats>& per_family) {
        const agg::MacroMicro mm = agg::macro_micro(per_family);
        return py::make_tuple(mm.macro_olr, mm.macro_pass, mm.micro_olr, mm.micro_pass);
    });
}
