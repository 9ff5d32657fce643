#include "alphax/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "alphax/errors.hpp"

namespace alphax {

std::string format_real(const Real& v, int sig)
{
    if (sig <= 0)
        sig = sig_digits_for(v.prec());
    return v.str(sig);
}

std::string csv_kv(const std::vector<std::pair<std::string, std::string>>& rows)
{
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : rows)
        os << k << ',' << v << '\n';
    return os.str();
}

std::string csv_columns(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows)
{
    std::ostringstream os;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i)
            os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw validation_error("cannot open output file: " + path);
    out << text;
    if (!out)
        throw validation_error("failed writing output file: " + path);
}

} // namespace alphax
