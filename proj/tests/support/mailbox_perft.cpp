// Prints reference perft counts from the mailbox generator:
//   mailbox_perft "<fen>" <max depth>
#include <cstdlib>
#include <iostream>

#include "mailbox_movegen.hpp"

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: mailbox_perft <fen> <max depth>\n";
        return 2;
    }
    const auto board = mailbox::from_fen(argv[1]);
    const int max_depth = std::atoi(argv[2]);
    for (int d = 0; d <= max_depth; ++d) std::cout << "depth " << d << ": " << mailbox::perft(board, d) << '\n';
}
