// L-space slope machinery
