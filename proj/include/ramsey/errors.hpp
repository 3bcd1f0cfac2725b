/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#pragma once

#include <stdexcept>
#include <string>

namespace ramsey
{
    enum class ErrorKind
    {
        invalid_input,
        instance_too_large,
        order_not_degenerate,
        not_a_prefix,
        not_induced,
        not_path_or_cycle,
        budget_exceeded,
        invariant_violated,
        no_monochromatic_clique,
        io
    };

    auto to_string(ErrorKind kind) -> std::string;

    class Error : public std::runtime_error
    {
        private:
            ErrorKind _kind;

        public:
            Error(ErrorKind kind, const std::string & message);

            auto kind() const -> ErrorKind;
    };
}
