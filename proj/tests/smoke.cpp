// compile-coverage translation unit: every public header in one place
#include "numera/affine.hpp"
#include "numera/algnum.hpp"
#include "numera/automaton.hpp"
#include "numera/counting.hpp"
#include "numera/errors.hpp"
#include "numera/periodic.hpp"
#include "numera/pisot.hpp"
#include "numera/poly.hpp"
#include "numera/rational.hpp"
#include "numera/realline.hpp"
#include "numera/upword.hpp"

int main() { return 0; }
