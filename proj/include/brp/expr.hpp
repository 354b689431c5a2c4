#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "brp/hopf.hpp"
#include "brp/tensor.hpp"

namespace brp {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// d = 0 skips the upper label bound; n = 0 skips the letter-grade bound
HElem parse_h(std::string_view text, int d = 0);
TensorElem parse_tensor(std::string_view text, int d = 0, int n = 0);
Tree parse_tree(std::string_view text, int d = 0);
Forest parse_forest(std::string_view text, int d = 0);
Word parse_word(std::string_view text, int d = 0, int n = 0);

std::string print_tree(const Tree& t);
std::string print_forest(const Forest& f);
std::string print_word(const Word& w);
std::string print_h(const HElem& x);
std::string print_tensor(const TensorElem& x);
std::string print_pair(const PairElem& x);

// printer order (used to sort terms)
bool print_less(const Forest& a, const Forest& b);
bool print_less(const Word& a, const Word& b);

}  // namespace brp
