#pragma once

#include "dlchess/attack_table.hpp"
#include "dlchess/bench.hpp"
#include "dlchess/bitboard.hpp"
#include "dlchess/direct_tables.hpp"
#include "dlchess/lines.hpp"
#include "dlchess/movegen.hpp"
#include "dlchess/oracle.hpp"
#include "dlchess/position.hpp"
#include "dlchess/rotated.hpp"
#include "dlchess/table_io.hpp"
