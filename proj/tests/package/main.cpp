#include <iostream>
#include "erank/json_io.hpp"
#include "erank/parser.hpp"
int main() {
  auto f = erank::parse_formula("E y . x = y^2");
  std::cout << erank::to_json(erank::definable_set(f, erank::GaloisField::make_order(7)), *erank::GaloisField::make_order(7)).dump() << "\n";
}
