#include "qc/gamma.hpp"

#include <cctype>
#include <cstdint>

namespace qc {

namespace {

std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw parse_error("empty number in gamma");
    std::int64_t v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw parse_error("bad gamma literal `" + s + "`");
        v = v * 10 + (ch - '0');
        if (v > (std::int64_t{1} << 40)) throw parse_error("gamma component too large");
    }
    return v;
}

}  // namespace

gamma_ratio gamma_ratio::parse(const std::string& text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 12) throw parse_error("gamma decimal too long");
        std::int64_t den = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
        return {parse_int(whole) * den + (frac.empty() ? 0 : parse_int(frac)), den};
    }
    return {parse_int(text), 1};
}

}  // namespace qc
