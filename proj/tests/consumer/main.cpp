#include <cstdio>
#include "macamp/tradeoff_two_user.hpp"
int main() { std::printf("%.5f\n", macamp::distortion_bound({{2, 2}, 1, 1, 1}, 1, 1)); }
