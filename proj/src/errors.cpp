/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <ramsey/errors.hpp>

using namespace ramsey;

auto ramsey::to_string(ErrorKind kind) -> std::string
{
    switch (kind) {
        case ErrorKind::invalid_input:           return "invalid-input";
        case ErrorKind::instance_too_large:      return "instance-too-large";
        case ErrorKind::order_not_degenerate:    return "order-not-degenerate";
        case ErrorKind::not_a_prefix:            return "not-a-prefix";
        case ErrorKind::not_induced:             return "not-induced";
        case ErrorKind::not_path_or_cycle:       return "not-path-or-cycle";
        case ErrorKind::budget_exceeded:         return "budget-exceeded";
        case ErrorKind::invariant_violated:      return "invariant-violated";
        case ErrorKind::no_monochromatic_clique: return "no-monochromatic-clique";
        case ErrorKind::io:                      return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string & message) :
    std::runtime_error(to_string(kind) + ": " + message),
    _kind(kind)
{
}

auto Error::kind() const -> ErrorKind
{
    return _kind;
}
