// implementation pending
#include "holoext/common.hpp"
