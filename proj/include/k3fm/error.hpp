#ifndef K3FM_ERROR_HPP
#define K3FM_ERROR_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace k3fm {

enum class ErrorKind {
    InvalidParameter,
    InvalidLattice,
    InvalidElement,
    InvalidSubgroup,
    InvalidIsometry,
    InvalidMukaiVector,
    InvalidUnitsSubgroup,
    NotApplicable,
    OutOfScope,
    Capacity,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidLattice: return "invalid-lattice";
    case ErrorKind::InvalidElement: return "invalid-element";
    case ErrorKind::InvalidSubgroup: return "invalid-subgroup";
    case ErrorKind::InvalidIsometry: return "invalid-isometry";
    case ErrorKind::InvalidMukaiVector: return "invalid-mukai-vector";
    case ErrorKind::InvalidUnitsSubgroup: return "invalid-B";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::OutOfScope: return "out-of-scope";
    case ErrorKind::Capacity: return "capacity";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond)
        throw Error(kind, what);
}

/// Enumeration caps. `form_order` bounds |A| for isometry-group style
/// enumeration; `element_t` bounds t for materialising all t^2 elements of
/// A_{d,t}.
struct Budget {
    std::int64_t form_order = 10'000;
    std::int64_t element_t = 2'000;

    /// Reads K3FM_BUDGET="<form_order>[,<element_t>]"; malformed values are ignored.
    static Budget from_env()
    {
        Budget b;
        const char* env = std::getenv("K3FM_BUDGET");
        if (env == nullptr)
            return b;
        std::string s(env);
        auto comma = s.find(',');
        try {
            std::size_t used = 0;
            auto first = s.substr(0, comma);
            auto v = std::stoll(first, &used);
            if (used == first.size() && v > 0)
                b.form_order = v;
            if (comma != std::string::npos) {
                auto second = s.substr(comma + 1);
                auto w = std::stoll(second, &used);
                if (used == second.size() && w > 0)
                    b.element_t = w;
            }
        } catch (const std::exception&) {
        }
        return b;
    }
};

} // namespace k3fm

#endif // K3FM_ERROR_HPP
